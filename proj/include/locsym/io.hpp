// io.hpp -- the algebra file format.
//
//   field 3 <k> <c0> <c1> ... <ck>     modulus coefficients, little-endian, monic
//   dim <n>
//   unit <index>
//   basis <label> <label> ...
//   mul <i> <j> : <k1>:<coef1> <k2>:<coef2> ...
//
// Coefficients are polynomial strings over t ("2*t+1"); omitted (i,j) pairs
// mean zero product; '#' starts a comment; indices are 0-based.  Parsing and
// emission round-trip bit-exactly.

#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "locsym/algebra.hpp"

namespace locsym {

class parse_error : public error {
public:
    parse_error(int line, const std::string& what)
        : error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline std::string emit_algebra(const AlgebraTable& a) {
    const Gf& F = a.field();
    std::ostringstream out;
    out << "field 3 " << F.degree();
    for (int c : F.modulus()) out << " " << c;
    out << "\n";
    out << "dim " << a.dim() << "\n";
    out << "unit " << a.unit_index() << "\n";
    out << "basis";
    for (const std::string& l : a.labels()) out << " " << l;
    out << "\n";
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            const std::uint8_t* e = a.entry(i, j);
            bool nonzero = false;
            for (int k = 0; k < a.dim(); ++k)
                if (e[k]) nonzero = true;
            if (!nonzero) continue;
            out << "mul " << i << " " << j << " :";
            for (int k = 0; k < a.dim(); ++k)
                if (e[k]) out << " " << k << ":" << F.render(F.el(e[k]));
            out << "\n";
        }
    return out.str();
}

namespace detail {

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : line) {
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) toks.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) toks.push_back(cur);
    return toks;
}

inline int int_of(const std::string& tok, int line, const std::string& what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw parse_error(line, "expected integer for " + what + ", got '" + tok + "'");
    }
}

}  // namespace detail

// Parses the format above.  The field is owned by the returned pair: tables
// reference their field by pointer, so custom-modulus fields must outlive
// the table.
struct ParsedAlgebra {
    std::shared_ptr<const Gf> field_storage;  // null when a shared singleton was used
    const Gf* field = nullptr;
    AlgebraTable table;
};

inline ParsedAlgebra parse_algebra(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    ParsedAlgebra out;
    int n = -1, unit = -1;
    std::vector<std::string> labels;
    std::vector<std::vector<Vec>> prod;
    bool saw_field = false;

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = detail::tokens_of(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "field") {
            if (saw_field) throw parse_error(lineno, "duplicate field line");
            if (toks.size() < 3) throw parse_error(lineno, "field line needs: field 3 <k> <coeffs...>");
            if (detail::int_of(toks[1], lineno, "characteristic") != 3)
                throw parse_error(lineno, "characteristic must be 3");
            int k = detail::int_of(toks[2], lineno, "degree");
            if (static_cast<int>(toks.size()) != 3 + k + 1)
                throw parse_error(lineno, "field line needs " + std::to_string(k + 1) +
                                              " modulus coefficients");
            std::vector<int> mod;
            for (int i = 0; i < k + 1; ++i)
                mod.push_back(detail::int_of(toks[3 + i], lineno, "modulus coefficient"));
            try {
                if (k >= 1 && k <= 4 && mod == default_modulus(k)) {
                    out.field = &gf(k);
                } else {
                    out.field_storage = std::make_shared<Gf>(k, mod);
                    out.field = out.field_storage.get();
                }
            } catch (const error& e) {
                throw parse_error(lineno, e.what());
            }
            saw_field = true;
        } else if (kw == "dim") {
            if (!saw_field) throw parse_error(lineno, "dim before field line");
            if (toks.size() != 2) throw parse_error(lineno, "dim line needs one integer");
            n = detail::int_of(toks[1], lineno, "dimension");
            if (n <= 0 || n > 81) throw parse_error(lineno, "dimension out of range 1..81");
            prod.assign(n, std::vector<Vec>(n, Vec(n, 0)));
        } else if (kw == "unit") {
            if (n < 0) throw parse_error(lineno, "unit before dim line");
            if (toks.size() != 2) throw parse_error(lineno, "unit line needs one integer");
            unit = detail::int_of(toks[1], lineno, "unit index");
            if (unit < 0 || unit >= n) throw parse_error(lineno, "unit index out of range");
        } else if (kw == "basis") {
            if (n < 0) throw parse_error(lineno, "basis before dim line");
            if (static_cast<int>(toks.size()) != n + 1)
                throw parse_error(lineno, "basis line needs " + std::to_string(n) + " labels");
            labels.assign(toks.begin() + 1, toks.end());
        } else if (kw == "mul") {
            if (n < 0) throw parse_error(lineno, "mul before dim line");
            if (toks.size() < 4 || toks[3] != ":")
                throw parse_error(lineno, "mul line needs: mul <i> <j> : <k>:<coef> ...");
            int i = detail::int_of(toks[1], lineno, "row index");
            int j = detail::int_of(toks[2], lineno, "column index");
            if (i < 0 || i >= n || j < 0 || j >= n)
                throw parse_error(lineno, "product indices out of range");
            for (std::size_t t = 4; t < toks.size(); ++t) {
                auto colon = toks[t].find(':');
                if (colon == std::string::npos)
                    throw parse_error(lineno, "expected <index>:<coef>, got '" + toks[t] + "'");
                int k = detail::int_of(toks[t].substr(0, colon), lineno, "basis index");
                if (k < 0 || k >= n) throw parse_error(lineno, "basis index out of range");
                try {
                    prod[i][j][k] = out.field->parse(toks[t].substr(colon + 1)).v;
                } catch (const error& e) {
                    throw parse_error(lineno, e.what());
                }
            }
        } else {
            throw parse_error(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!saw_field) throw parse_error(lineno, "missing field line");
    if (n < 0) throw parse_error(lineno, "missing dim line");
    if (unit < 0) throw parse_error(lineno, "missing unit line");
    if (labels.empty())
        for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    out.table = AlgebraTable(labels, unit, prod, *out.field);
    return out;
}

}  // namespace locsym
