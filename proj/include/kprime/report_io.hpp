#pragma once

#include "kprime/intervals.hpp"
#include "kprime/ramanujan.hpp"
#include "kprime/residue.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kprime {

using json = nlohmann::ordered_json;

enum class OutputFormat { BFile, Csv, Json };

inline OutputFormat parse_format(std::string_view name)
{
    if (name == "bfile")
        return OutputFormat::BFile;
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

/// "<index> <value>\n" per term, 1-based.
inline void write_bfile(std::ostream& out, const std::vector<std::uint64_t>& terms,
                        std::uint64_t first_index = 1)
{
    for (std::size_t i = 0; i < terms.size(); ++i)
        out << (first_index + i) << ' ' << terms[i] << '\n';
}

// ---------------------------------------------------------------------------
// Report types and their JSON forms. Keys are emitted in declaration order.
// ---------------------------------------------------------------------------

struct SequenceReport {
    std::string kind; ///< "ramanujan", "chebyshev", "residue" or "nk_residue"
    std::string v;
    std::vector<std::uint64_t> terms;

    friend bool operator==(const SequenceReport&, const SequenceReport&) = default;
};

struct CapacityReport {
    std::string v;
    std::uint64_t x0;
    std::string delta;
    std::uint64_t capacity;

    friend bool operator==(const CapacityReport&, const CapacityReport&) = default;
};

inline void to_json(json& j, const SequenceReport& r)
{
    j = json{{"kind", r.kind}, {"v", r.v}, {"terms", r.terms}};
}

inline void from_json(const json& j, SequenceReport& r)
{
    j.at("kind").get_to(r.kind);
    j.at("v").get_to(r.v);
    j.at("terms").get_to(r.terms);
}

inline void to_json(json& j, const CapacityReport& r)
{
    j = json{{"v", r.v}, {"x0", r.x0}, {"delta", r.delta}, {"capacity", r.capacity}};
}

inline void from_json(const json& j, CapacityReport& r)
{
    j.at("v").get_to(r.v);
    j.at("x0").get_to(r.x0);
    j.at("delta").get_to(r.delta);
    j.at("capacity").get_to(r.capacity);
}

inline NkMethod parse_nk_method(std::string_view name)
{
    for (auto m : {NkMethod::Formula31, NkMethod::Formula32, NkMethod::Formula4,
                   NkMethod::Formula35, NkMethod::Descent}) {
        if (name == to_string(m))
            return m;
    }
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

inline void to_json(json& j, const NkResult& r)
{
    j = json{{"k", r.k}, {"m", r.m}, {"value", r.value}, {"method", to_string(r.method)}};
}

inline void from_json(const json& j, NkResult& r)
{
    j.at("k").get_to(r.k);
    j.at("m").get_to(r.m);
    j.at("value").get_to(r.value);
    r.method = parse_nk_method(j.at("method").get<std::string>());
}

inline void to_json(json& j, const GapReport& r)
{
    j = json{{"k", r.k}};
    if (auto* g = std::get_if<GapFound>(&r.outcome)) {
        j["outcome"] = "gap";
        j["a"] = g->a;
    } else if (auto* z = std::get_if<CertifiedZero>(&r.outcome)) {
        j["outcome"] = "certified_zero";
        j["a"] = 0;
        j["bound"] = z->bound;
        j["checked_up_to"] = z->checked_up_to;
    } else {
        j["outcome"] = "unresolved";
    }
    j["scan_limit"] = r.scan_limit;
}

inline void from_json(const json& j, GapReport& r)
{
    j.at("k").get_to(r.k);
    j.at("scan_limit").get_to(r.scan_limit);
    const auto outcome = j.at("outcome").get<std::string>();
    if (outcome == "gap")
        r.outcome = GapFound{j.at("a").get<std::uint64_t>()};
    else if (outcome == "certified_zero")
        r.outcome = CertifiedZero{j.at("bound").get<std::uint64_t>(),
                                  j.at("checked_up_to").get<std::uint64_t>()};
    else if (outcome == "unresolved")
        r.outcome = Unresolved{};
    else
        throw std::invalid_argument("unknown gap outcome '" + outcome + "'");
}

inline void to_json(json& j, const Prop8Violation& v)
{
    j = json{{"m", v.m}, {"kind", to_string(v.kind)}, {"value", v.value}, {"bound", v.bound}};
}

inline void from_json(const json& j, Prop8Violation& v)
{
    j.at("m").get_to(v.m);
    v.kind = j.at("kind").get<std::string>() == "ramanujan" ? RamanujanKind::Ramanujan
                                                            : RamanujanKind::Chebyshev;
    j.at("value").get_to(v.value);
    j.at("bound").get_to(v.bound);
}

inline bool operator==(const Prop8Violation& a, const Prop8Violation& b)
{
    return a.m == b.m && a.kind == b.kind && a.value == b.value && a.bound == b.bound;
}

inline void to_json(json& j, const Prop8Report& r)
{
    j = json{{"k", r.k},
             {"t", r.t},
             {"m_max", r.m_max},
             {"analytic_m0", r.analytic_m0},
             {"all_hold", r.all_hold()},
             {"violations", r.violations}};
}

inline void from_json(const json& j, Prop8Report& r)
{
    j.at("k").get_to(r.k);
    j.at("t").get_to(r.t);
    j.at("m_max").get_to(r.m_max);
    j.at("analytic_m0").get_to(r.analytic_m0);
    j.at("violations").get_to(r.violations);
}

inline bool operator==(const Prop8Report& a, const Prop8Report& b)
{
    return a.k == b.k && a.t == b.t && a.m_max == b.m_max && a.analytic_m0 == b.analytic_m0 &&
           a.violations == b.violations;
}

/// One named pass/fail line from a verification suite.
struct Check {
    std::string name;
    bool passed;
    std::string detail;

    friend bool operator==(const Check&, const Check&) = default;
};

inline void to_json(json& j, const Check& c)
{
    j = json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

inline void from_json(const json& j, Check& c)
{
    j.at("name").get_to(c.name);
    j.at("passed").get_to(c.passed);
    j.at("detail").get_to(c.detail);
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

inline void write_sequence(std::ostream& out, OutputFormat format, const SequenceReport& r)
{
    switch (format) {
    case OutputFormat::BFile:
        write_bfile(out, r.terms);
        break;
    case OutputFormat::Csv:
        out << "m,value\n";
        for (std::size_t i = 0; i < r.terms.size(); ++i)
            out << (i + 1) << ',' << r.terms[i] << '\n';
        break;
    case OutputFormat::Json:
        out << json(r).dump(2) << '\n';
        break;
    }
}

inline void write_nk(std::ostream& out, OutputFormat format, const std::vector<NkResult>& rs)
{
    switch (format) {
    case OutputFormat::BFile:
        for (const auto& r : rs)
            out << r.m << ' ' << r.value << '\n';
        break;
    case OutputFormat::Csv:
        out << "k,m,value,method\n";
        for (const auto& r : rs)
            out << r.k << ',' << r.m << ',' << r.value << ',' << to_string(r.method) << '\n';
        break;
    case OutputFormat::Json:
        out << json(rs).dump(2) << '\n';
        break;
    }
}

inline void write_gaps(std::ostream& out, OutputFormat format, const std::vector<GapReport>& rs)
{
    switch (format) {
    case OutputFormat::BFile:
        for (const auto& r : rs) {
            out << r.k << ' ';
            if (auto a = r.a_value())
                out << *a;
            else
                out << "unresolved";
            out << '\n';
        }
        break;
    case OutputFormat::Csv:
        out << "k,outcome,a,bound,checked_up_to,scan_limit\n";
        for (const auto& r : rs) {
            out << r.k << ',';
            if (auto* g = std::get_if<GapFound>(&r.outcome))
                out << "gap," << g->a << ",,";
            else if (auto* z = std::get_if<CertifiedZero>(&r.outcome))
                out << "certified_zero,0," << z->bound << ',' << z->checked_up_to;
            else
                out << "unresolved,,,";
            out << ',' << r.scan_limit << '\n';
        }
        break;
    case OutputFormat::Json:
        out << json(rs).dump(2) << '\n';
        break;
    }
}

inline void write_capacity(std::ostream& out, OutputFormat format, const CapacityReport& r)
{
    switch (format) {
    case OutputFormat::BFile:
        out << 1 << ' ' << r.capacity << '\n';
        break;
    case OutputFormat::Csv:
        out << "v,x0,delta,capacity\n" << r.v << ',' << r.x0 << ',' << r.delta << ','
            << r.capacity << '\n';
        break;
    case OutputFormat::Json:
        out << json(r).dump(2) << '\n';
        break;
    }
}

inline void write_checks(std::ostream& out, OutputFormat format, const std::string& suite,
                         const std::vector<Check>& checks)
{
    if (format == OutputFormat::Json) {
        bool passed = std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.passed; });
        out << json{{"suite", suite}, {"passed", passed}, {"checks", checks}}.dump(2) << '\n';
        return;
    }
    if (format == OutputFormat::Csv)
        out << "name,passed,detail\n";
    for (const auto& c : checks) {
        if (format == OutputFormat::Csv)
            out << c.name << ',' << (c.passed ? "true" : "false") << ",\"" << c.detail << "\"\n";
        else
            out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
}

} // namespace kprime
