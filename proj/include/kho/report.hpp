#pragma once
// Presentation layer: homology tables rendered in the classical grid layout
// (homological degree across, internal degree down, torsion as subscripted
// prime powers), the inverse parser, line-based ingestion of named PD codes,
// and JSON serialization of full invariant reports.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "kho/diagram.hpp"
#include "kho/homology.hpp"
#include "kho/invariants.hpp"

namespace kho {

namespace detail {

// Unicode subscript digits, one per decimal digit of n
inline std::string subscript(int64_t n) {
    std::string plain = std::to_string(n);
    std::string out;
    for (char c : plain) {
        out += '\xE2';
        out += '\x82';
        out += static_cast<char>('\x80' + (c - '0'));
    }
    return out;
}

// reads a run of subscript digits starting at pos; advances pos past them
inline std::optional<int64_t> read_subscript(const std::string& s, size_t& pos) {
    int64_t value = 0;
    bool any = false;
    while (pos + 2 < s.size() && s[pos] == '\xE2' && s[pos + 1] == '\x82' &&
           static_cast<unsigned char>(s[pos + 2]) >= 0x80 &&
           static_cast<unsigned char>(s[pos + 2]) <= 0x89) {
        value = value * 10 + (static_cast<unsigned char>(s[pos + 2]) - 0x80);
        pos += 3;
        any = true;
    }
    if (!any) return std::nullopt;
    return value;
}

// columns a string occupies in a monospace terminal: every code point we
// emit (ASCII or a subscript digit) is one column wide
inline size_t display_width(const std::string& s) {
    size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++w;
    return w;
}

inline std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// prime-power factorization of n >= 2
inline std::vector<int64_t> prime_power_factors(int64_t n) {
    std::vector<int64_t> out;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int64_t pk = 1;
        while (n % p == 0) {
            pk *= p;
            n /= p;
        }
        out.push_back(pk);
    }
    if (n > 1) out.push_back(n);
    return out;
}

// rebuild the invariant-factor divisibility chain (ascending) from a
// multiset of prime powers: the largest factor collects the largest power
// of every prime, and so on down
inline std::vector<int64_t> invariant_factors(const std::multiset<int64_t>& prime_powers) {
    std::map<int64_t, std::vector<int64_t>> by_prime;
    for (int64_t pk : prime_powers) {
        if (prime_power_factors(pk).size() != 1)
            throw std::invalid_argument("torsion order is not a prime power");
        int64_t p = 2;
        while (pk % p) ++p;
        by_prime[p].push_back(pk);
    }
    size_t k = 0;
    for (auto& [p, v] : by_prime) {
        std::sort(v.rbegin(), v.rend());
        k = std::max(k, v.size());
    }
    std::vector<int64_t> factors(k, 1);
    for (auto& [p, v] : by_prime)
        for (size_t idx = 0; idx < v.size(); ++idx) factors[idx] *= v[idx];
    std::reverse(factors.begin(), factors.end());
    return factors;
}

}  // namespace detail

// ---- grid cells ---------------------------------------------------------------
//
// A cell lists the free rank first, then one entry per distinct prime-power
// torsion order with its multiplicity as the coefficient:  "2, 1₂" is
// Z² ⊕ Z/2 and "1₈" is Z/8 alone.  Composite invariant factors are shown in
// their primary decomposition (Z/6 renders as "1₂, 1₃").

inline std::string render_cell(const AbelianGroup& g) {
    std::vector<std::string> items;
    if (g.rank) items.push_back(std::to_string(g.rank));
    auto parts = primary_parts(g);
    for (auto it = parts.begin(); it != parts.end();) {
        int64_t m = *it;
        auto count = parts.count(m);
        items.push_back(std::to_string(count) + detail::subscript(m));
        std::advance(it, static_cast<long>(count));
    }
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
    return out;
}

inline AbelianGroup parse_cell(const std::string& cell) {
    AbelianGroup g;
    std::multiset<int64_t> prime_powers;
    // getline would silently swallow a trailing separator
    if (const std::string whole = detail::trimmed(cell); !whole.empty() && whole.back() == ',')
        throw std::invalid_argument("empty entry in cell \"" + cell + "\"");
    std::stringstream ss(cell);
    std::string item;
    bool any = false;
    while (std::getline(ss, item, ',')) {
        item = detail::trimmed(item);
        if (item.empty()) throw std::invalid_argument("empty entry in cell \"" + cell + "\"");
        size_t pos = 0;
        int64_t count = 0;
        bool digits = false;
        while (pos < item.size() && std::isdigit(static_cast<unsigned char>(item[pos]))) {
            count = count * 10 + (item[pos] - '0');
            ++pos;
            digits = true;
        }
        if (!digits) throw std::invalid_argument("cell entry \"" + item + "\" lacks a coefficient");
        auto order = detail::read_subscript(item, pos);
        if (pos != item.size())
            throw std::invalid_argument("trailing characters in cell entry \"" + item + "\"");
        if (!order) {
            g.rank += count;
        } else {
            if (*order < 2)
                throw std::invalid_argument("torsion order must be at least 2 in \"" + item + "\"");
            for (int64_t pk : detail::prime_power_factors(*order))
                for (int64_t c = 0; c < count; ++c) prime_powers.insert(pk);
        }
        any = true;
    }
    if (!any) throw std::invalid_argument("empty cell");
    g.torsion = detail::invariant_factors(prime_powers);
    return g;
}

// ---- grid rendering -------------------------------------------------------------
//
// Homological degree i runs left to right, internal degree j top to bottom
// (descending), matching the usual published layout.  Empty cells are "·".
// render_table and parse_table are mutually inverse on every table the
// homology driver produces.

inline std::string render_table(const HomologyTable& t) {
    if (t.groups.empty()) return "(trivial)\n";
    int imin = INT_MAX, imax = INT_MIN, jmin = INT_MAX, jmax = INT_MIN;
    for (const auto& [ij, g] : t.groups) {
        imin = std::min(imin, ij.first);
        imax = std::max(imax, ij.first);
        jmin = std::min(jmin, ij.second);
        jmax = std::max(jmax, ij.second);
    }
    // occupied internal degrees of a single table share one parity; fall back
    // to step one if a caller hands us a mixed-parity table
    int jstep = 2;
    for (const auto& [ij, g] : t.groups)
        if (((ij.second - jmin) % 2 + 2) % 2 != 0) jstep = 1;

    const int cols = imax - imin + 1;
    std::vector<std::string> header(static_cast<size_t>(cols) + 1);
    header[0] = "j\\i";
    for (int i = imin; i <= imax; ++i)
        header[static_cast<size_t>(i - imin) + 1] = std::to_string(i);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> labels;
    for (int j = jmax; j >= jmin; j -= jstep) {
        std::vector<std::string> row(static_cast<size_t>(cols), "\xC2\xB7");
        for (int i = imin; i <= imax; ++i)
            if (const AbelianGroup* g = t.at(i, j)) row[static_cast<size_t>(i - imin)] = render_cell(*g);
        rows.push_back(std::move(row));
        labels.push_back(std::to_string(j));
    }

    std::vector<size_t> width(static_cast<size_t>(cols) + 1);
    width[0] = detail::display_width(header[0]);
    for (const auto& l : labels) width[0] = std::max(width[0], detail::display_width(l));
    for (size_t c = 1; c < header.size(); ++c) {
        width[c] = detail::display_width(header[c]);
        for (const auto& row : rows) width[c] = std::max(width[c], detail::display_width(row[c - 1]));
    }

    std::ostringstream os;
    auto put = [&](const std::string& s, size_t w) {
        for (size_t k = detail::display_width(s); k < w; ++k) os << ' ';
        os << s;
    };
    for (size_t c = 0; c < header.size(); ++c) {
        if (c) os << "  ";
        put(header[c], width[c]);
    }
    os << '\n';
    for (size_t r = 0; r < rows.size(); ++r) {
        put(labels[r], width[0]);
        for (size_t c = 0; c < rows[r].size(); ++c) {
            os << "  ";
            put(rows[r][c], width[c + 1]);
        }
        os << '\n';
    }
    return os.str();
}

inline HomologyTable parse_table(const std::string& text) {
    HomologyTable t;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("empty table text");
    if (detail::trimmed(line) == "(trivial)") return t;

    std::istringstream hs(line);
    std::string tok;
    if (!(hs >> tok) || tok != "j\\i")
        throw std::invalid_argument("table header must start with j\\i");
    std::vector<int> ivals;
    while (hs >> tok) ivals.push_back(std::stoi(tok));
    if (ivals.empty()) throw std::invalid_argument("table header lists no columns");

    while (std::getline(is, line)) {
        if (detail::trimmed(line).empty()) continue;
        std::istringstream rs(line);
        if (!(rs >> tok)) continue;
        int j = std::stoi(tok);
        // a cell's inner items end with ',' — reassemble split tokens
        std::vector<std::string> cells;
        std::string cur;
        while (rs >> tok) {
            cur.empty() ? cur = tok : cur += " " + tok;
            if (cur.back() != ',') {
                cells.push_back(cur);
                cur.clear();
            }
        }
        if (!cur.empty()) throw std::invalid_argument("dangling comma in table row for j=" + tok);
        if (cells.size() != ivals.size())
            throw std::invalid_argument("table row for j=" + std::to_string(j) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(ivals.size()));
        for (size_t c = 0; c < cells.size(); ++c) {
            if (cells[c] == "\xC2\xB7") continue;
            t.set(ivals[c], j, parse_cell(cells[c]));
        }
    }
    return t;
}

// ---- knot-table ingestion ---------------------------------------------------------
//
// One record per line, "name: PD code".  Blank lines and '#' comments are
// skipped; malformed lines are recorded with their line number and the rest
// of the file is still ingested.

struct IngestResult {
    std::vector<std::pair<std::string, PlanarDiagram>> entries;
    std::vector<std::pair<int, std::string>> errors;  // (line number, message)
};

inline IngestResult ingest_table(std::istream& in) {
    IngestResult out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trimmed(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            out.errors.emplace_back(lineno, "missing ':' separator");
            continue;
        }
        std::string name = detail::trimmed(line.substr(0, colon));
        std::string code = detail::trimmed(line.substr(colon + 1));
        if (name.empty()) {
            out.errors.emplace_back(lineno, "empty name");
            continue;
        }
        try {
            out.entries.emplace_back(name, parse_pd(code));
        } catch (const std::exception& e) {
            out.errors.emplace_back(lineno, e.what());
        }
    }
    return out;
}

inline IngestResult ingest_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return ingest_table(in);
}

// ---- JSON serialization -------------------------------------------------------------

inline nlohmann::json table_to_json(const HomologyTable& t) {
    auto arr = nlohmann::json::array();
    for (const auto& [ij, g] : t.groups)
        arr.push_back({{"i", ij.first}, {"j", ij.second}, {"rank", g.rank}, {"torsion", g.torsion}});
    return arr;
}

inline HomologyTable table_from_json(const nlohmann::json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("table JSON must be an array");
    HomologyTable t;
    for (const auto& cell : arr) {
        AbelianGroup g;
        g.rank = cell.at("rank").get<int64_t>();
        g.torsion = cell.at("torsion").get<std::vector<int64_t>>();
        t.set(cell.at("i").get<int>(), cell.at("j").get<int>(), std::move(g));
    }
    return t;
}

struct ReportOptions {
    bool with_qa = true;  // the QA search honors its node budget, so it is bounded
    QaOptions qa;
    HomologyOptions homology;
};

// Full invariant report for one diagram.  `main_table`, when given, must be
// the homology of D for (variant, ring) and is reused instead of recomputed.
inline nlohmann::json json_report(const PlanarDiagram& D, Variant variant, RingSpec ring,
                                  const ReportOptions& opt = {},
                                  const HomologyTable* main_table = nullptr) {
    auto table_for = [&](Variant v) -> HomologyTable {
        if (main_table && v == variant) return *main_table;
        return khovanov_homology(D, v, ring, opt.homology);
    };
    HomologyTable table = table_for(variant);

    nlohmann::json rep;
    rep["diagram_hash"] = D.hash();
    rep["variant"] = variant_name(variant);
    rep["ring"] = ring.str();
    rep["table"] = table_to_json(table);
    rep["poincare"] = table.poincare().str();
    rep["width"] = homological_width(table);

    JonesOracle oracle;
    Laurent jones = oracle.jones(D);
    rep["jones"] = jones.str("q");
    rep["det"] = determinant_from_jones(jones);

    HomologyTable even = variant == Variant::Even ? table : table_for(Variant::Even);
    HomologyTable evenr = variant == Variant::EvenReduced ? table : table_for(Variant::EvenReduced);
    HomologyTable oddr = variant == Variant::OddReduced ? table : table_for(Variant::OddReduced);
    rep["tb_bounds"] = {{"even", tb_bound(even, false)},
                        {"reduced", tb_bound(evenr, true)},
                        {"odd_reduced", tb_bound(oddr, true)}};

    if (D.component_count == 1)
        rep["s"] = rasmussen_s(D);
    else
        rep["s"] = nullptr;

    if (opt.with_qa) {
        QaSearcher qa(opt.qa);
        QaResult r = qa.run(D);
        rep["qa"] = {{"verdict", tri_name(r.status)}, {"reason", r.reason}, {"nodes", r.nodes}};
    }
    return rep;
}

}  // namespace kho
