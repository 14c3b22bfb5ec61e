// families.hpp -- structure-constant tables for the canonical 9-dimensional
// algebras: the quantum complete intersection B = k<X,Y>/(X^3, Y^3, XY+YX),
// the three-generator family F3(a,b) and the two-generator family
// F2(a,b,c,d).  Tables are produced by straightening words against a fixed
// monomial basis and then certified by the full associativity check in the
// AlgebraTable constructor, so a bad rule set cannot slip through.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "locsym/algebra.hpp"

namespace locsym {

using Word = std::vector<int>;  // generator indices; empty word is the unit

struct RewriteRule {
    Word lhs;
    std::vector<std::pair<Word, Fel>> rhs;  // linear combination, may be empty (-> 0)
};

// Linear combination of basis words, indexed by basis position.
using LinComb = std::map<int, std::uint8_t>;

class RewriteSystem {
public:
    RewriteSystem(int generators, std::vector<Word> basis_words, std::vector<RewriteRule> rules,
                  int max_len, const Gf& F)
        : g_(generators),
          basis_(std::move(basis_words)),
          rules_(std::move(rules)),
          max_len_(max_len),
          F_(&F) {
        for (std::size_t i = 0; i < basis_.size(); ++i) basis_index_[basis_[i]] = static_cast<int>(i);
    }

    int generators() const { return g_; }
    const std::vector<Word>& basis_words() const { return basis_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const Gf& field() const { return *F_; }

    // Reduce a word to its normal form as a combination of basis words.
    // Words of length >= max_len vanish.  A word that neither matches a rule
    // nor lies in the basis means the rule set is incomplete; that is a bug
    // in the presentation, reported loudly.
    LinComb reduce(const Word& w) const {
        auto memo_it = memo_.find(w);
        if (memo_it != memo_.end()) return memo_it->second;
        if (depth_ > kDepthLimit)
            throw invariant_violation("rewriting recursion too deep (cyclic rule set)");
        struct DepthGuard {
            int& d;
            explicit DepthGuard(int& dd) : d(dd) { ++d; }
            ~DepthGuard() { --d; }
        } guard(depth_);
        LinComb result;
        if (static_cast<int>(w.size()) >= max_len_) {
            memo_[w] = result;
            return result;
        }
        auto bit = basis_index_.find(w);
        if (bit != basis_index_.end()) {
            result[bit->second] = 1;
            memo_[w] = result;
            return result;
        }
        for (const RewriteRule& r : rules_) {
            if (r.lhs.size() > w.size()) continue;
            for (std::size_t pos = 0; pos + r.lhs.size() <= w.size(); ++pos) {
                bool match = true;
                for (std::size_t i = 0; i < r.lhs.size(); ++i)
                    if (w[pos + i] != r.lhs[i]) {
                        match = false;
                        break;
                    }
                if (!match) continue;
                for (const auto& [rw, coef] : r.rhs) {
                    Word nw(w.begin(), w.begin() + pos);
                    nw.insert(nw.end(), rw.begin(), rw.end());
                    nw.insert(nw.end(), w.begin() + pos + r.lhs.size(), w.end());
                    if (++steps_ > kStepLimit)
                        throw invariant_violation("rewriting did not terminate (ambiguity)");
                    LinComb sub = reduce(nw);
                    for (const auto& [bi, c] : sub) {
                        std::uint8_t add = F_->muli(coef.v, c);
                        auto [it, ins] = result.emplace(bi, add);
                        if (!ins) it->second = F_->addi(it->second, add);
                        if (it->second == 0) result.erase(it);
                    }
                }
                memo_[w] = result;
                return result;
            }
        }
        throw invariant_violation("rewriting stuck on word of length " +
                                  std::to_string(w.size()) + " (incomplete rule set)");
    }

    // Multiplication table on the basis words, certified associative.
    AlgebraTable build_table(const std::vector<std::string>& labels) const {
        int n = static_cast<int>(basis_.size());
        std::vector<std::vector<Vec>> prod(n, std::vector<Vec>(n, Vec(n, 0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Word w = basis_[i];
                w.insert(w.end(), basis_[j].begin(), basis_[j].end());
                for (const auto& [bi, c] : reduce(w)) prod[i][j][bi] = c;
            }
        int unit = basis_index_.at(Word{});
        return AlgebraTable(labels, unit, prod, *F_);
    }

private:
    static constexpr long kStepLimit = 2'000'000;
    static constexpr int kDepthLimit = 64;
    int g_;
    std::vector<Word> basis_;
    std::vector<RewriteRule> rules_;
    int max_len_;
    const Gf* F_;
    std::map<Word, int> basis_index_;
    mutable std::map<Word, LinComb> memo_;
    mutable long steps_ = 0;
    mutable int depth_ = 0;
};

enum class FamilyTag { B, F3, F2, H2BAD_PARTIAL };

inline std::string family_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::B: return "B";
        case FamilyTag::F3: return "F3";
        case FamilyTag::F2: return "F2";
        case FamilyTag::H2BAD_PARTIAL: return "H2BAD_PARTIAL";
    }
    return "?";
}

struct FamilySpec {
    FamilyTag tag;
    std::vector<Fel> params;
    const Gf* field;
};

namespace detail {

inline std::vector<Word> two_gen_basis() {
    // 1, x, y, x^2, y^2, xy, x^2y, xy^2, x^2y^2
    return {Word{}, {0}, {1}, {0, 0}, {1, 1}, {0, 1}, {0, 0, 1}, {0, 1, 1}, {0, 0, 1, 1}};
}

inline std::vector<std::string> two_gen_labels(const std::string& x, const std::string& y) {
    return {"1", x, y, x + "^2", y + "^2", x + y, x + "^2" + y, x + y + "^2",
            x + "^2" + y + "^2"};
}

// shared two-generator system: yx = -xy, x^3 and y^3 rewrite to the given
// combinations, x^3 y = x y^3 = 0, all length-5 words vanish
inline RewriteSystem two_gen_system(Fel a, Fel b, Fel c, Fel d, const Gf& F) {
    Fel one = F.one();
    std::vector<RewriteRule> rules;
    rules.push_back({{0, 0, 0, 1}, {}});                       // x^3 y -> 0
    rules.push_back({{0, 1, 1, 1}, {}});                       // x y^3 -> 0
    rules.push_back({{1, 0}, {{{0, 1}, F.neg(one)}}});         // yx -> -xy
    std::vector<std::pair<Word, Fel>> x3;
    if (!a.is_zero()) x3.push_back({{0, 1, 1}, a});
    if (!b.is_zero()) x3.push_back({{0, 0, 1, 1}, b});
    rules.push_back({{0, 0, 0}, x3});                          // x^3 -> a xy^2 + b x^2y^2
    std::vector<std::pair<Word, Fel>> y3;
    if (!c.is_zero()) y3.push_back({{0, 0, 1}, c});
    if (!d.is_zero()) y3.push_back({{0, 0, 1, 1}, d});
    rules.push_back({{1, 1, 1}, y3});                          // y^3 -> c x^2y + d x^2y^2
    return RewriteSystem(2, two_gen_basis(), std::move(rules), 5, F);
}

}  // namespace detail

inline AlgebraTable build_B(const Gf& F) {
    Fel z = F.zero();
    return detail::two_gen_system(z, z, z, z, F).build_table(detail::two_gen_labels("X", "Y"));
}

// F2 table for arbitrary parameters; used internally by the classifier,
// which can surface parameter values outside the canonical {0,1} domain.
inline AlgebraTable build_F2_unrestricted(Fel a, Fel b, Fel c, Fel d, const Gf& F) {
    return detail::two_gen_system(a, b, c, d, F).build_table(detail::two_gen_labels("x", "y"));
}

inline AlgebraTable build_F2(Fel a, Fel b, Fel c, Fel d, const Gf& F) {
    if (!(a == F.zero() || a == F.one()) || !(c == F.zero() || c == F.one()))
        throw error("build_F2: parameters alpha and gamma must lie in {0,1}");
    return build_F2_unrestricted(a, b, c, d, F);
}

inline RewriteSystem f3_system(Fel a, Fel b, const Gf& F) {
    // generators x=0, y=1, z=2; basis 1, x, y, z, xy, yx, xyx, yxy, xyxy
    std::vector<Word> basis = {Word{}, {0}, {1}, {2}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1},
                               {0, 1, 0, 1}};
    std::vector<RewriteRule> rules;
    rules.push_back({{1, 0, 1, 0}, {{{0, 1, 0, 1}, F.one()}}});  // yxyx -> xyxy
    rules.push_back({{2, 0}, {}});
    rules.push_back({{0, 2}, {}});
    rules.push_back({{2, 1}, {}});
    rules.push_back({{1, 2}, {}});
    rules.push_back({{2, 2}, {{{0, 1, 0, 1}, F.one()}}});        // z^2 -> xyxy
    std::vector<std::pair<Word, Fel>> sq;
    if (!a.is_zero()) sq.push_back({{0, 1, 0}, a});
    if (!b.is_zero()) sq.push_back({{1, 0, 1}, b});
    rules.push_back({{0, 0}, sq});                               // x^2 -> a xyx + b yxy
    rules.push_back({{1, 1}, sq});                               // y^2 -> a xyx + b yxy
    return RewriteSystem(3, std::move(basis), std::move(rules), 5, F);
}

inline AlgebraTable build_F3(Fel a, Fel b, const Gf& F) {
    return f3_system(a, b, F).build_table(
        {"1", "x", "y", "z", "xy", "yx", "xyx", "yxy", "xyxy"});
}

inline AlgebraTable build_family(const FamilySpec& f) {
    const Gf& F = *f.field;
    switch (f.tag) {
        case FamilyTag::B:
            if (!f.params.empty()) throw error("family B takes no parameters");
            return build_B(F);
        case FamilyTag::F3:
            if (f.params.size() != 2) throw error("family F3 takes 2 parameters");
            return build_F3(f.params[0], f.params[1], F);
        case FamilyTag::F2:
            if (f.params.size() != 4) throw error("family F2 takes 4 parameters");
            return build_F2(f.params[0], f.params[1], f.params[2], f.params[3], F);
        case FamilyTag::H2BAD_PARTIAL:
            throw error("no complete presentation is known for the H2BAD branch; "
                        "only the classifier emits partial data for it");
    }
    throw error("build_family: bad tag");
}

// Relation export for the diagonal torus computation: each rewrite rule is
// the relation lhs - rhs = 0; only terms with nonzero coefficient at the
// current parameter values appear.
struct Relation {
    std::vector<std::pair<Word, Fel>> terms;
};

inline std::vector<Relation> family_relations(const FamilySpec& f) {
    const Gf& F = *f.field;
    std::vector<RewriteRule> rules;
    switch (f.tag) {
        case FamilyTag::B:
            rules = detail::two_gen_system(F.zero(), F.zero(), F.zero(), F.zero(), F).rules();
            break;
        case FamilyTag::F2:
            if (f.params.size() != 4) throw error("family F2 takes 4 parameters");
            rules = detail::two_gen_system(f.params[0], f.params[1], f.params[2], f.params[3], F)
                        .rules();
            break;
        case FamilyTag::F3:
            if (f.params.size() != 2) throw error("family F3 takes 2 parameters");
            rules = f3_system(f.params[0], f.params[1], F).rules();
            break;
        default:
            throw error("family_relations: family has no presentation");
    }
    std::vector<Relation> out;
    for (const RewriteRule& r : rules) {
        Relation rel;
        rel.terms.push_back({r.lhs, F.one()});
        for (const auto& [w, c] : r.rhs)
            if (!c.is_zero()) rel.terms.push_back({w, F.neg(c)});
        out.push_back(std::move(rel));
    }
    return out;
}

// Builds the table and checks the full hypothesis: dimension 9, local,
// symmetric, center profile matching Z(B); on success the structural lemma
// suite is appended to the report.
inline CheckReport verify_family_hypothesis(const FamilySpec& f) {
    CheckReport out;
    AlgebraTable t = build_family(f);
    out.add("associativity certified (dim " + std::to_string(t.dim()) + ")", true);
    StructuralReport rep;
    try {
        rep = analyze(t);
    } catch (const not_local_error& e) {
        out.add("local", false, e.what());
        return out;
    }
    out.add("local", true);
    out.add("dim 9", t.dim() == 9);
    out.add("symmetrizing form with invertible Gram", rep.sym_form.has_value());
    bool profile = center_profile_matches_ZB(t);
    out.add("center profile matches Z(B)", profile);
    if (t.dim() == 9 && rep.sym_form && profile) {
        CheckReport suite = assert_structural_lemmas(t, rep);
        for (auto& it : suite.items) out.items.push_back(std::move(it));
    }
    return out;
}

}  // namespace locsym
