#include "realpt/involution.hpp"

#include "realpt/errors.hpp"

#include <random>
#include <sstream>

namespace realpt {

std::string to_string(InvolutionMode mode) {
    switch (mode) {
        case InvolutionMode::Conjugation: return "conj";
        case InvolutionMode::ConjugationInner: return "conj_inner";
        case InvolutionMode::ConjugationTransposeInverseInner: return "conj_transpose_inverse_inner";
    }
    return "conj";
}

InvolutionMode involution_mode_from_string(const std::string& s) {
    if (s == "conj") return InvolutionMode::Conjugation;
    if (s == "conj_inner") return InvolutionMode::ConjugationInner;
    if (s == "conj_transpose_inverse_inner") return InvolutionMode::ConjugationTransposeInverseInner;
    throw ValidationError("unknown involution mode '" + s + "'");
}

AntiRegularMap AntiRegularMap::conjugation(FieldPtr field, std::size_t n) {
    return AntiRegularMap(InvolutionMode::Conjugation, CMatrix::identity(std::move(field), n));
}

AntiRegularMap::AntiRegularMap(InvolutionMode mode, CMatrix twist)
    : mode_(mode), twist_(std::move(twist)) {
    if (mode_ == InvolutionMode::Conjugation && !twist_.is_identity())
        mode_ = InvolutionMode::ConjugationInner;
    twist_inv_ = twist_.inverse();
}

CMatrix AntiRegularMap::apply_base(const CMatrix& x) const {
    CMatrix c = x.conj();
    if (transposes()) return c.transpose().inverse();
    return c;
}

CMatrix AntiRegularMap::operator()(const CMatrix& x) const {
    CMatrix b = apply_base(x);
    if (mode_ == InvolutionMode::Conjugation) return b;
    return twist_ * b * twist_inv_;
}

AntiRegularMap AntiRegularMap::then_inner(const CMatrix& a) const {
    InvolutionMode m = mode_ == InvolutionMode::Conjugation ? InvolutionMode::ConjugationInner : mode_;
    return AntiRegularMap(m, a * twist_);
}

CMatrix AntiRegularMap::square_inner() const { return twist_ * apply_base(twist_); }

bool operator==(const AntiRegularMap& a, const AntiRegularMap& b) {
    return a.transposes() == b.transposes() && a.twist_ == b.twist_;
}

std::string word_to_string(const Word& w) {
    std::ostringstream os;
    for (std::size_t k = 0; k < w.size(); ++k)
        os << (k ? "*" : "") << "g" << w[k].first << (w[k].second ? "^-1" : "");
    return os.str();
}

std::vector<Word> sample_words(std::size_t generator_count, std::size_t count, std::uint64_t seed) {
    if (generator_count == 0) throw PreconditionError("sample_words: no generators");
    std::mt19937_64 rng(seed);
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t len = 1 + rng() % 6;
        Word w;
        for (std::size_t i = 0; i < len; ++i) w.emplace_back(rng() % generator_count, (rng() & 1) != 0);
        out.push_back(std::move(w));
    }
    return out;
}

CMatrix evaluate_word(const Word& w, const std::vector<CMatrix>& generators,
                      const std::vector<CMatrix>& inverses) {
    CMatrix acc = CMatrix::identity(generators.front().field(), generators.front().dim());
    for (const auto& [idx, inv] : w) acc = acc * (inv ? inverses[idx] : generators[idx]);
    return acc;
}

InvolutionVerdict verify_involution(const AntiRegularMap& tau, const std::vector<CMatrix>& generators,
                                    std::uint64_t seed, std::size_t word_count) {
    if (generators.empty()) throw PreconditionError("verify_involution: empty generator list");
    InvolutionVerdict v;
    v.seed = seed;
    for (std::size_t k = 0; k < generators.size(); ++k) {
        if (tau(tau(generators[k])) != generators[k]) {
            v.ok = false;
            v.failure = "tau^2 != id";
            v.witness = "g" + std::to_string(k);
            return v;
        }
    }
    std::vector<CMatrix> inverses;
    for (const auto& g : generators) inverses.push_back(g.inverse());
    auto words = sample_words(generators.size(), word_count, seed);
    std::vector<CMatrix> values;
    for (const auto& w : words) {
        CMatrix x = evaluate_word(w, generators, inverses);
        if (tau(tau(x)) != x) {
            v.ok = false;
            v.failure = "tau^2 != id";
            v.witness = word_to_string(w);
            return v;
        }
        values.push_back(std::move(x));
    }
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        if (tau(values[k] * values[k + 1]) != tau(values[k]) * tau(values[k + 1])) {
            v.ok = false;
            v.failure = "tau(xy) != tau(x) tau(y)";
            v.witness = word_to_string(words[k]) + " | " + word_to_string(words[k + 1]);
            return v;
        }
    }
    return v;
}

}  // namespace realpt
