#pragma once

#include "realpt/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace realpt {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2021ULL;

/// How an anti-regular map acts before the inner twist.
enum class InvolutionMode {
    Conjugation,                ///< x -> conj(x)
    ConjugationInner,           ///< x -> u conj(x) u^-1
    ConjugationTransposeInverseInner,  ///< x -> u (conj(x)^T)^-1 u^-1
};

std::string to_string(InvolutionMode mode);
InvolutionMode involution_mode_from_string(const std::string& s);

/// An anti-regular automorphism of a matrix group: an entrywise conjugation,
/// optionally followed by transpose-inverse, followed by conjugation by `twist`.
///
/// The same type carries anti-regular involutions (real structures) and the
/// automorphisms `f` of 2-cocycle pairs, which need not be involutive.
class AntiRegularMap {
public:
    AntiRegularMap() = default;
    /// Plain entrywise conjugation on n x n matrices.
    static AntiRegularMap conjugation(FieldPtr field, std::size_t n);
    AntiRegularMap(InvolutionMode mode, CMatrix twist);

    InvolutionMode mode() const { return mode_; }
    const CMatrix& twist() const { return twist_; }
    std::size_t dim() const { return twist_.dim(); }
    bool transposes() const { return mode_ == InvolutionMode::ConjugationTransposeInverseInner; }

    /// The map without its inner twist.
    CMatrix apply_base(const CMatrix& x) const;
    CMatrix operator()(const CMatrix& x) const;

    /// inn(a) o f.
    AntiRegularMap then_inner(const CMatrix& a) const;
    /// The element q with f^2 = inn(q), namely twist * base(twist).
    CMatrix square_inner() const;

    friend bool operator==(const AntiRegularMap& a, const AntiRegularMap& b);

private:
    InvolutionMode mode_ = InvolutionMode::Conjugation;
    CMatrix twist_;
    CMatrix twist_inv_;
};

/// A word in generators: each letter is (generator index, inverted?).
using Word = std::vector<std::pair<std::size_t, bool>>;

std::string word_to_string(const Word& w);

/// Deterministic pseudorandom words of length 1..6.
std::vector<Word> sample_words(std::size_t generator_count, std::size_t count, std::uint64_t seed);

CMatrix evaluate_word(const Word& w, const std::vector<CMatrix>& generators,
                      const std::vector<CMatrix>& inverses);

struct InvolutionVerdict {
    bool ok = true;
    std::string failure;   ///< which axiom failed
    std::string witness;   ///< the offending word
    std::uint64_t seed = kDefaultSeed;
};

/// Checks tau^2 = id and tau(xy) = tau(x) tau(y) on the generators and on
/// `word_count` sampled words (pairs of consecutive words for the product rule).
InvolutionVerdict verify_involution(const AntiRegularMap& tau, const std::vector<CMatrix>& generators,
                                    std::uint64_t seed = kDefaultSeed, std::size_t word_count = 32);

}  // namespace realpt
