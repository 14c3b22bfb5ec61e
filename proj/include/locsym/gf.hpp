// gf.hpp -- exact arithmetic in GF(3^k), k <= 4.
//
// Fields are table-driven: a Gf object owns add/mul/inv/sqrt tables over
// element indices 0..q-1.  An element index encodes the coefficient tuple
// (c0,...,c_{k-1}) of the power basis of the modulus, little-endian base 3.
// Elements (Fel) carry a pointer to their field so mixed-field arithmetic
// fails loudly instead of corrupting data.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace locsym {

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a step of a computation needs a square root (or a fourth
// root of unity) that the current coefficient field does not contain.
class field_extension_needed : public error {
public:
    explicit field_extension_needed(const std::string& what) : error(what) {}
};

class Gf;

struct Fel {
    std::uint8_t v = 0;
    const Gf* F = nullptr;

    bool is_zero() const { return v == 0; }
    friend bool operator==(const Fel& a, const Fel& b) {
        return a.v == b.v && a.F == b.F;
    }
    friend bool operator!=(const Fel& a, const Fel& b) { return !(a == b); }
};

// GF(3^k) with a fixed monic modulus, irreducible over GF(3).
class Gf {
public:
    static constexpr int kChar = 3;

    Gf(int degree, std::vector<int> modulus) : k_(degree), modulus_(std::move(modulus)) {
        if (k_ < 1 || k_ > 4) throw error("Gf: degree must be in 1..4");
        if (static_cast<int>(modulus_.size()) != k_ + 1)
            throw error("Gf: modulus must have degree+1 coefficients");
        for (int c : modulus_)
            if (c < 0 || c > 2) throw error("Gf: modulus coefficients must lie in {0,1,2}");
        if (modulus_[k_] != 1) throw error("Gf: modulus must be monic");
        check_irreducible();
        q_ = 1;
        for (int i = 0; i < k_; ++i) q_ *= 3;
        build_tables();
    }

    int degree() const { return k_; }
    int order() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    Fel el(int idx) const {
        if (idx < 0 || idx >= q_) throw error("Gf::el: index out of range");
        return Fel{static_cast<std::uint8_t>(idx), this};
    }
    Fel zero() const { return el(0); }
    Fel one() const { return el(1); }
    // Scalar embedding of an integer (the prime field sits at indices 0,1,2).
    Fel from_int(long long n) const {
        long long r = n % 3;
        if (r < 0) r += 3;
        return el(static_cast<int>(r));
    }
    // The power-basis generator t; only meaningful for k >= 2.
    Fel gen() const { return k_ >= 2 ? el(3) : el(1); }

    // raw-index kernels (hot paths use these directly)
    std::uint8_t addi(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
    std::uint8_t subi(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + neg_[b]]; }
    std::uint8_t muli(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
    std::uint8_t negi(std::uint8_t a) const { return neg_[a]; }
    std::uint8_t invi(std::uint8_t a) const {
        if (a == 0) throw error("division by zero in GF(3^" + std::to_string(k_) + ")");
        return inv_[a];
    }

    Fel add(Fel a, Fel b) const { return el(addi(chk(a), chk(b))); }
    Fel sub(Fel a, Fel b) const { return el(subi(chk(a), chk(b))); }
    Fel mul(Fel a, Fel b) const { return el(muli(chk(a), chk(b))); }
    Fel div(Fel a, Fel b) const { return el(muli(chk(a), invi(chk(b)))); }
    Fel neg(Fel a) const { return el(negi(chk(a))); }
    Fel inv(Fel a) const { return el(invi(chk(a))); }
    Fel frobenius(Fel a) const { return mul(mul(a, a), a); }

    // Square root: none for non-squares, else the root whose coefficient
    // tuple (c0,...,c_{k-1}) is lexicographically smaller.
    bool has_sqrt(Fel a) const { return sqrt_[chk(a)] != kNone; }
    Fel sqrt(Fel a) const {
        std::uint8_t r = sqrt_[chk(a)];
        if (r == kNone)
            throw field_extension_needed("sqrt: " + render(a) + " is a non-square in GF(3^" +
                                         std::to_string(k_) + ")");
        return el(r);
    }

    // i with i^2 = -1; exists iff 4 | 3^k - 1, i.e. k even.
    bool has_fourth_root_of_unity() const { return i4_ != kNone; }
    Fel fourth_root_of_unity() const {
        if (i4_ == kNone)
            throw field_extension_needed("no primitive 4th root of unity in GF(3^" +
                                         std::to_string(k_) + ")");
        return el(i4_);
    }

    int coeff(Fel a, int i) const {
        chk(a);
        int v = a.v;
        for (int j = 0; j < i; ++j) v /= 3;
        return v % 3;
    }

    // Field homomorphism into a larger field (degree must divide); sends the
    // power-basis generator to the smallest-index root of this modulus in
    // `big` and is verified to respect + and * on all pairs.
    std::vector<std::uint8_t> embedding_into(const Gf& big) const {
        if (big.degree() % k_ != 0)
            throw error("embedding_into: degree " + std::to_string(k_) +
                        " does not divide " + std::to_string(big.degree()));
        int root = -1;
        for (int r = 0; r < big.order(); ++r) {
            Fel val = big.zero(), p = big.one(), x = big.el(r);
            for (int i = 0; i <= k_; ++i) {
                val = big.add(val, big.mul(big.from_int(modulus_[i]), p));
                p = big.mul(p, x);
            }
            if (val.is_zero()) {
                root = r;
                break;
            }
        }
        if (root < 0) throw error("embedding_into: modulus has no root in the larger field");
        std::vector<std::uint8_t> map(q_, 0);
        for (int a = 0; a < q_; ++a) {
            Fel img = big.zero(), p = big.one(), x = big.el(root);
            Fel fa = el(a);
            for (int i = 0; i < k_; ++i) {
                img = big.add(img, big.mul(big.from_int(coeff(fa, i)), p));
                p = big.mul(p, x);
            }
            map[a] = img.v;
        }
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) {
                if (map[addi(a, b)] != big.addi(map[a], map[b]) ||
                    map[muli(a, b)] != big.muli(map[a], map[b]))
                    throw error("embedding_into: constructed map is not a homomorphism");
            }
        return map;
    }

    // Rendered as a polynomial string over t, e.g. "2*t+1"; "0" for zero.
    std::string render(Fel a) const {
        chk(a);
        std::string out;
        for (int i = k_ - 1; i >= 0; --i) {
            int c = coeff(a, i);
            if (c == 0) continue;
            if (!out.empty()) out += "+";
            if (i == 0) {
                out += std::to_string(c);
            } else {
                if (c != 1) out += std::to_string(c) + "*";
                out += (i == 1) ? "t" : "t^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

    // Parses the render() grammar: sum of terms c, t, c*t, t^i, c*t^i.
    Fel parse(const std::string& s) const {
        std::array<int, 4> c{0, 0, 0, 0};
        std::size_t p = 0;
        if (s.empty()) throw error("field element parse: empty string");
        while (p < s.size()) {
            int cf = 1;
            bool have_cf = false;
            if (std::isdigit(static_cast<unsigned char>(s[p]))) {
                cf = s[p] - '0';
                have_cf = true;
                ++p;
                if (p < s.size() && s[p] == '*') ++p;
                else if (p < s.size() && s[p] == 't')
                    throw error("field element parse: expected '*' before t in '" + s + "'");
            }
            int pw = 0;
            if (p < s.size() && s[p] == 't') {
                pw = 1;
                ++p;
                if (p < s.size() && s[p] == '^') {
                    ++p;
                    if (p >= s.size() || !std::isdigit(static_cast<unsigned char>(s[p])))
                        throw error("field element parse: bad exponent in '" + s + "'");
                    pw = s[p] - '0';
                    ++p;
                }
            } else if (!have_cf) {
                throw error("field element parse: unexpected character in '" + s + "'");
            }
            if (pw >= k_ && !(pw == 0))
                throw error("field element parse: power t^" + std::to_string(pw) +
                            " out of range for GF(3^" + std::to_string(k_) + ")");
            if (pw == 0 && !have_cf)
                throw error("field element parse: bad term in '" + s + "'");
            c[pw] = (c[pw] + cf) % 3;
            if (p < s.size()) {
                if (s[p] != '+') throw error("field element parse: expected '+' in '" + s + "'");
                ++p;
                if (p == s.size()) throw error("field element parse: trailing '+' in '" + s + "'");
            }
        }
        int idx = 0, b = 1;
        for (int i = 0; i < k_; ++i) {
            idx += c[i] * b;
            b *= 3;
        }
        return el(idx);
    }

    friend bool operator==(const Gf& a, const Gf& b) {
        return a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

private:
    static constexpr std::uint8_t kNone = 255;

    std::uint8_t chk(Fel a) const {
        if (a.F != this)
            throw error("field mismatch: element does not belong to this GF(3^" +
                        std::to_string(k_) + ")");
        return a.v;
    }

    static std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m) {
        // both little-endian over GF(3); m monic
        int dm = static_cast<int>(m.size()) - 1;
        while (static_cast<int>(a.size()) > dm) {
            int da = static_cast<int>(a.size()) - 1;
            int lead = a[da] % 3;
            if (lead != 0) {
                for (int i = 0; i <= dm; ++i) {
                    int j = da - dm + i;
                    a[j] = ((a[j] - lead * m[i]) % 3 + 3) % 3;
                }
            }
            a.pop_back();
        }
        return a;
    }

    void check_irreducible() const {
        if (k_ == 1) return;
        // no roots in GF(3) rules out linear factors
        for (int r = 0; r < 3; ++r) {
            int val = 0, p = 1;
            for (int i = 0; i <= k_; ++i) {
                val = (val + modulus_[i] * p) % 3;
                p = (p * r) % 3;
            }
            if (val == 0)
                throw error("Gf: modulus has root " + std::to_string(r) + " in GF(3)");
        }
        if (k_ == 4) {
            // also rule out irreducible quadratic factors by trial division
            static const int quads[3][3] = {{1, 0, 1}, {2, 1, 1}, {2, 2, 1}};
            for (const auto& qd : quads) {
                std::vector<int> m(qd, qd + 3);
                std::vector<int> rem = poly_mod(modulus_, m);
                bool zero = true;
                for (int c : rem)
                    if (c % 3 != 0) zero = false;
                if (zero) throw error("Gf: modulus divisible by an irreducible quadratic");
            }
        }
    }

    std::array<int, 4> coeffs_of(int idx) const {
        std::array<int, 4> c{0, 0, 0, 0};
        for (int i = 0; i < k_; ++i) {
            c[i] = idx % 3;
            idx /= 3;
        }
        return c;
    }

    // lexicographic order on (c0,...,c_{k-1})
    bool lex_less(int a, int b) const {
        auto ca = coeffs_of(a), cb = coeffs_of(b);
        for (int i = 0; i < k_; ++i) {
            if (ca[i] != cb[i]) return ca[i] < cb[i];
        }
        return false;
    }

    void build_tables() {
        add_.assign(q_ * q_, 0);
        mul_.assign(q_ * q_, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        sqrt_.assign(q_, kNone);
        for (int a = 0; a < q_; ++a) {
            auto ca = coeffs_of(a);
            for (int b = 0; b < q_; ++b) {
                auto cb = coeffs_of(b);
                // add
                int s = 0, p3 = 1;
                for (int i = 0; i < k_; ++i) {
                    s += ((ca[i] + cb[i]) % 3) * p3;
                    p3 *= 3;
                }
                add_[a * q_ + b] = static_cast<std::uint8_t>(s);
                // mul: polynomial product reduced mod modulus
                std::vector<int> prod(2 * k_ - 1, 0);
                for (int i = 0; i < k_; ++i)
                    for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % 3;
                prod = poly_mod(prod, modulus_);
                int m = 0;
                p3 = 1;
                for (int i = 0; i < static_cast<int>(prod.size()) && i < k_; ++i) {
                    m += (prod[i] % 3) * p3;
                    p3 *= 3;
                }
                mul_[a * q_ + b] = static_cast<std::uint8_t>(m);
            }
        }
        for (int a = 0; a < q_; ++a) {
            auto ca = coeffs_of(a);
            int n = 0, p3 = 1;
            for (int i = 0; i < k_; ++i) {
                n += ((3 - ca[i]) % 3) * p3;
                p3 *= 3;
            }
            neg_[a] = static_cast<std::uint8_t>(n);
        }
        for (int a = 1; a < q_; ++a)
            for (int b = 1; b < q_; ++b)
                if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
        for (int b = 0; b < q_; ++b) {
            int sq = mul_[b * q_ + b];
            if (sqrt_[sq] == kNone || lex_less(b, sqrt_[sq]))
                sqrt_[sq] = static_cast<std::uint8_t>(b);
        }
        i4_ = kNone;
        for (int a = 0; a < q_; ++a) {
            if (mul_[a * q_ + a] == neg_[1]) {
                i4_ = static_cast<std::uint8_t>(a);
                break;
            }
        }
    }

    int k_;
    std::vector<int> modulus_;
    int q_ = 0;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_, sqrt_;
    std::uint8_t i4_ = kNone;
};

// Canonical moduli: t, t^2+1, t^3+2t+1, t^4+t+2.
inline std::vector<int> default_modulus(int k) {
    switch (k) {
        case 1: return {0, 1};
        case 2: return {1, 0, 1};
        case 3: return {1, 2, 0, 1};
        case 4: return {2, 1, 0, 0, 1};
        default: throw error("default_modulus: degree must be in 1..4");
    }
}

// Shared singletons.  GF(9) = GF(3)[t]/(t^2+1) is the default working field:
// the smallest one containing every square root and the fourth root of unity
// that the basis normalizations take.
inline const Gf& gf(int k) {
    static const Gf f1(1, default_modulus(1));
    static const Gf f2(2, default_modulus(2));
    static const Gf f3(3, default_modulus(3));
    static const Gf f4(4, default_modulus(4));
    switch (k) {
        case 1: return f1;
        case 2: return f2;
        case 3: return f3;
        case 4: return f4;
        default: throw error("gf: degree must be in 1..4");
    }
}
inline const Gf& gf3() { return gf(1); }
inline const Gf& gf9() { return gf(2); }

inline Fel operator+(Fel a, Fel b) { return a.F->add(a, b); }
inline Fel operator-(Fel a, Fel b) { return a.F->sub(a, b); }
inline Fel operator*(Fel a, Fel b) { return a.F->mul(a, b); }
inline Fel operator/(Fel a, Fel b) { return a.F->div(a, b); }
inline Fel operator-(Fel a) { return a.F->neg(a); }

}  // namespace locsym
