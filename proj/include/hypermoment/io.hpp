#ifndef HYPERMOMENT_IO_HPP
#define HYPERMOMENT_IO_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypermoment/bellgroup.hpp"
#include "hypermoment/error.hpp"
#include "hypermoment/hypergroup.hpp"
#include "hypermoment/jet.hpp"
#include "hypermoment/measure.hpp"
#include "hypermoment/moments.hpp"
#include "hypermoment/multi_index.hpp"
#include "hypermoment/recurrence.hpp"
#include "hypermoment/scalar.hpp"

// JSON and CSV forms of the library's values. Scalars always travel as
// exact strings; objects keep insertion order so output is reproducible.

namespace hypermoment::io {

using json = nlohmann::ordered_json;

namespace detail {

template <class Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
    }
}

inline std::uint64_t parse_natural(const std::string& s)
{
    if (!hypermoment::detail::is_digits(s))
        throw Error(ErrorCode::ParseError, "expected a natural number, got '" + s + "'");
    return std::stoull(s);
}

} // namespace detail

inline json to_json(const Scalar& s) { return s.str(); }

inline Scalar scalar_from_json(const json& j)
{
    if (j.is_string())
        return Scalar::parse(j.get<std::string>());
    if (j.is_number_integer())
        return Scalar(j.get<long long>());
    throw Error(ErrorCode::ParseError, "scalar must be a string or integer, got " + j.dump());
}

inline json to_json(const MultiIndex& alpha) { return alpha.components(); }

inline MultiIndex multi_index_from_json(const json& j)
{
    return detail::guarded("multi-index", [&] {
        if (!j.is_array() || j.empty())
            throw Error(ErrorCode::ParseError, "multi-index must be a nonempty array, got " + j.dump());
        std::vector<MultiIndex::value_type> c;
        for (const auto& v : j) {
            if (!v.is_number_unsigned())
                throw Error(ErrorCode::ParseError, "multi-index entries must be naturals, got " + j.dump());
            c.push_back(v.get<MultiIndex::value_type>());
        }
        return MultiIndex(std::move(c));
    });
}

/// Object keys such as "[1,0]".
inline MultiIndex multi_index_from_key(const std::string& key)
{
    return detail::guarded("multi-index key", [&] { return multi_index_from_json(json::parse(key)); });
}

inline json to_json(const Measure& mu)
{
    json atoms = json::object();
    for (const auto& [n, w] : mu.atoms())
        atoms[std::to_string(n)] = w.str();
    return json{{"atoms", atoms}};
}

inline Measure measure_from_json(const json& j)
{
    return detail::guarded("measure", [&] {
        Measure mu;
        for (const auto& [key, w] : j.at("atoms").items())
            mu.add(detail::parse_natural(key), scalar_from_json(w));
        return mu;
    });
}

inline json to_json(const Jet& u)
{
    json coeffs = json::object();
    for (const auto& [alpha, v] : u.coefficients())
        coeffs[alpha.str()] = v.str();
    return json{{"rank", u.rank()}, {"order", u.order()}, {"coeffs", coeffs}};
}

inline Jet jet_from_json(const json& j)
{
    return detail::guarded("jet", [&] {
        Jet u(j.at("rank").get<std::size_t>(), j.at("order").get<std::uint64_t>());
        for (const auto& [key, v] : j.at("coeffs").items())
            u.set(multi_index_from_key(key), scalar_from_json(v));
        return u;
    });
}

inline json to_json(const MomentSeed& seed)
{
    json values = json::object();
    for (const auto& [alpha, v] : seed.values)
        values[alpha.str()] = v.str();
    return json{{"rank", seed.rank}, {"order", seed.order}, {"values", values}};
}

/// Parses without completeness checks; callers decide when to require them.
inline MomentSeed seed_from_json(const json& j)
{
    return detail::guarded("seed", [&] {
        MomentSeed seed;
        seed.rank = j.at("rank").get<std::size_t>();
        seed.order = j.at("order").get<std::uint64_t>();
        for (const auto& [key, v] : j.at("values").items())
            seed.values.insert_or_assign(multi_index_from_key(key), scalar_from_json(v));
        return seed;
    });
}

inline json to_json(const MomentTable& table, bool approx = false)
{
    json rows = json::array();
    for (const auto& [alpha, col] : table.columns()) {
        for (std::uint64_t n = 0; n < col.size(); ++n) {
            json row{{"alpha", to_json(alpha)}, {"n", n}, {"value", col[n].str()}};
            if (approx)
                row["approx"] = col[n].approx();
            rows.push_back(std::move(row));
        }
    }
    return json{{"rank", table.rank()}, {"order", table.order()}, {"n_max", table.n_max()}, {"rows", rows}};
}

namespace detail {

struct TableRow {
    MultiIndex alpha;
    std::uint64_t n;
    Scalar value;
};

// Rank, order and n_max are inferred from the rows; every (alpha, n) must be present once.
inline MomentTable assemble_table(const std::vector<TableRow>& rows)
{
    if (rows.empty())
        throw Error(ErrorCode::ParseError, "table has no rows");
    const std::size_t rank = rows.front().alpha.rank();
    std::uint64_t order = 0;
    std::uint64_t n_max = 0;
    for (const auto& r : rows) {
        if (r.alpha.rank() != rank)
            throw Error(ErrorCode::RankMismatch, "table row " + r.alpha.str() + " has inconsistent rank");
        order = std::max(order, r.alpha.degree());
        n_max = std::max(n_max, r.n);
    }
    MomentTable table(rank, order, n_max);
    std::map<std::pair<MultiIndex, std::uint64_t>, bool> seen;
    for (const auto& r : rows) {
        if (!seen.emplace(std::pair{r.alpha, r.n}, true).second)
            throw Error(ErrorCode::ParseError, "duplicate table row " + r.alpha.str() + ", n=" + std::to_string(r.n));
        table.set(r.alpha, r.n, r.value);
    }
    const std::size_t expected = table.columns().size() * (n_max + 1);
    if (seen.size() != expected)
        throw Error(ErrorCode::ParseError, "table is incomplete: " + std::to_string(seen.size()) + " of " +
                                               std::to_string(expected) + " entries present");
    return table;
}

} // namespace detail

inline MomentTable table_from_json(const json& j)
{
    return detail::guarded("table", [&] {
        std::vector<detail::TableRow> rows;
        for (const auto& r : j.at("rows"))
            rows.push_back({multi_index_from_json(r.at("alpha")), r.at("n").get<std::uint64_t>(),
                            scalar_from_json(r.at("value"))});
        auto table = detail::assemble_table(rows);
        if (j.contains("n_max") && j.at("n_max").get<std::uint64_t>() != table.n_max())
            throw Error(ErrorCode::ParseError, "declared n_max does not match rows");
        return table;
    });
}

/// Columns alpha,n,value[,approx]; alpha is quoted because it contains commas.
inline std::string table_to_csv(const MomentTable& table, bool approx = false)
{
    std::ostringstream out;
    out << "alpha,n,value" << (approx ? ",approx" : "") << '\n';
    for (const auto& [alpha, col] : table.columns()) {
        for (std::uint64_t n = 0; n < col.size(); ++n) {
            out << '"' << alpha.str() << "\"," << n << ',' << col[n].str();
            if (approx)
                out << ',' << col[n].approx();
            out << '\n';
        }
    }
    return out.str();
}

inline MomentTable table_from_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("alpha,n,value", 0) != 0)
        throw Error(ErrorCode::ParseError, "CSV table must start with header alpha,n,value");
    std::vector<detail::TableRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"')
                quoted = !quoted;
            else if (ch == ',' && !quoted) {
                fields.push_back(std::move(field));
                field.clear();
            } else
                field.push_back(ch);
        }
        fields.push_back(std::move(field));
        if (fields.size() < 3)
            throw Error(ErrorCode::ParseError, "CSV line " + std::to_string(lineno) + " has too few fields");
        rows.push_back({multi_index_from_key(fields[0]), detail::parse_natural(fields[1]), Scalar::parse(fields[2])});
    }
    return detail::assemble_table(rows);
}

inline json to_json(const VerificationReport& report)
{
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back(
            json{{"alpha", to_json(v.alpha)}, {"n", v.n}, {"m", v.m}, {"lhs", v.lhs.str()}, {"rhs", v.rhs.str()}});
    return json{{"checked", report.checked}, {"violations", violations}};
}

inline VerificationReport report_from_json(const json& j)
{
    return detail::guarded("verification report", [&] {
        VerificationReport report;
        report.checked = j.at("checked").get<std::uint64_t>();
        for (const auto& v : j.at("violations"))
            report.violations.push_back({multi_index_from_json(v.at("alpha")), v.at("n").get<std::uint64_t>(),
                                         v.at("m").get<std::uint64_t>(), scalar_from_json(v.at("lhs")),
                                         scalar_from_json(v.at("rhs"))});
        return report;
    });
}

inline json to_json(const ValidationReport& report)
{
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back(json{{"index", v.index}, {"message", v.message}});
    return json{{"n_max", report.n_max}, {"valid", report.valid()}, {"violations", violations}};
}

/// Custom recurrence tables: {"n_max": N, "a": [...], "b": [...], "c": [...]}.
inline json spec_to_json(const RecurrenceSpec& spec)
{
    if (!spec.is_custom())
        throw Error(ErrorCode::ParseError, "only custom specs serialize as tables");
    auto column = [](const std::vector<Scalar>& v) {
        json arr = json::array();
        for (const auto& s : v)
            arr.push_back(s.str());
        return arr;
    };
    return json{{"n_max", spec.declared_n_max()},
                {"a", column(spec.table_a())},
                {"b", column(spec.table_b())},
                {"c", column(spec.table_c())}};
}

inline RecurrenceSpec spec_from_json(const json& j, std::string name = "custom")
{
    return detail::guarded("recurrence spec", [&] {
        auto column = [&](const char* key) {
            std::vector<Scalar> out;
            for (const auto& v : j.at(key))
                out.push_back(scalar_from_json(v));
            return out;
        };
        return RecurrenceSpec::custom(j.at("n_max").get<std::uint64_t>(), column("a"), column("b"), column("c"),
                                      std::move(name));
    });
}

inline json to_json(const AdditiveFamily& family)
{
    json slopes = json::object();
    for (const auto& [alpha, s] : family.slopes())
        slopes[alpha.str()] = s.str();
    return json{{"rank", family.rank()}, {"order", family.order()}, {"slopes", slopes}};
}

inline AdditiveFamily family_from_json(const json& j)
{
    return detail::guarded("additive family", [&] {
        std::map<MultiIndex, Scalar> slopes;
        for (const auto& [key, v] : j.at("slopes").items())
            slopes.insert_or_assign(multi_index_from_key(key), scalar_from_json(v));
        return AdditiveFamily(j.at("rank").get<std::size_t>(), j.at("order").get<std::uint64_t>(), std::move(slopes));
    });
}

inline json to_json(const GroupExponential& m) { return json{{"base", m.base.str()}}; }

inline GroupExponential exponential_from_json(const json& j)
{
    return detail::guarded("exponential", [&] { return GroupExponential{scalar_from_json(j.at("base"))}; });
}

inline json linearization_cache_to_json(const std::string& hypergroup, const std::map<LinearizationKey, Measure>& cache)
{
    json entries = json::array();
    for (const auto& [key, mu] : cache) {
        json e = to_json(mu);
        e["n"] = key.first;
        e["m"] = key.second;
        entries.push_back(std::move(e));
    }
    return json{{"hypergroup", hypergroup}, {"entries", entries}};
}

inline std::map<LinearizationKey, Measure> linearization_cache_from_json(const json& j)
{
    return detail::guarded("linearization cache", [&] {
        std::map<LinearizationKey, Measure> out;
        for (const auto& e : j.at("entries"))
            out.emplace(LinearizationKey{e.at("n").get<std::uint64_t>(), e.at("m").get<std::uint64_t>()},
                        measure_from_json(e));
        return out;
    });
}

} // namespace hypermoment::io

#endif
