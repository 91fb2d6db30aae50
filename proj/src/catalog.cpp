#include "wcg/catalog.hpp"

#include <map>
#include <tuple>
#include <sstream>

#include <json.hpp>

#include "wcg/equivalence.hpp"
#include "wcg/solver.hpp"

namespace wcg {

using ordered_json = nlohmann::ordered_json;

std::string to_json_line(const CatalogRecord& r)
{
    ordered_json j;
    j["rule"] = r.rule;
    j["n"] = r.n;
    j["m"] = r.m;
    if (r.valid_for_all_m_ge > 0)
        j["validForAllMGe"] = r.valid_for_all_m_ge;
    else
        j["validForAllMGe"] = nullptr;
    j["rep"] = r.rep.to_std();
    j["digest"] = r.digest;
    j["exhaustive"] = r.exhaustive;
    j["provenance"] = r.provenance;
    return j.dump();
}

CatalogRecord parse_json_line(std::string_view line)
{
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("catalog line is not valid JSON: ") + e.what());
    }
    try {
        CatalogRecord r;
        r.rule = j.at("rule").get<std::string>();
        RuleId::parse(r.rule);
        r.n = j.at("n").get<int>();
        r.m = j.at("m").get<int>();
        const auto& v = j.at("validForAllMGe");
        r.valid_for_all_m_ge = v.is_null() ? 0 : v.get<int>();
        r.rep = WeightVector(j.at("rep").get<std::vector<std::int64_t>>());
        r.digest = j.at("digest").get<std::string>();
        r.exhaustive = j.at("exhaustive").get<bool>();
        r.provenance = j.at("provenance").get<std::string>();
        if (r.rep.size() != r.n)
            throw ParseError("catalog record rep has " + std::to_string(r.rep.size()) + " weights but n=" +
                             std::to_string(r.n));
        if (r.provenance != "computed" && r.provenance != "golden")
            throw ParseError("unknown provenance '" + r.provenance + "'");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("catalog record is missing a field: ") + e.what());
    }
}

std::string write_catalog(const std::vector<CatalogRecord>& records)
{
    std::string out;
    for (const auto& r : records)
        out += to_json_line(r) + "\n";
    return out;
}

std::vector<CatalogRecord> read_catalog(std::string_view text)
{
    std::vector<CatalogRecord> records;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            records.push_back(parse_json_line(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

const std::vector<GoldenGroup>& golden_groups()
{
    static const std::vector<GoldenGroup> groups = {
        {"antiplurality", 3, 3, 0,
         {
          {1,0,0}, {1,1,0}, {1,1,1}, {2,1,1}, {2,2,1}}},
        {"antiplurality", 3, 4, 4,
         {
          {1,0,0}, {1,1,0}, {1,1,1}}},
        {"antiplurality", 4, 3, 0,
         {
          {1,0,0,0}, {1,1,0,0}, {1,1,1,0}, {1,1,1,1}, {2,1,1,0}, {2,1,1,1}, {2,2,1,0}, {2,2,1,1},
          {2,2,2,1}, {3,2,1,1}, {3,2,2,1}, {3,3,1,1}, {3,3,2,1}, {3,3,2,2}, {4,3,2,1}, {4,3,2,2},
          {4,4,2,1}, {4,4,3,2}, {5,4,3,2}}},
        {"antiplurality", 4, 4, 0,
         {
          {1,0,0,0}, {1,1,0,0}, {1,1,1,0}, {1,1,1,1}, {2,1,1,1}, {2,2,1,1}, {2,2,2,1}}},
        {"antiplurality", 4, 5, 5,
         {
          {1,0,0,0}, {1,1,0,0}, {1,1,1,0}, {1,1,1,1}}},
        {"borda", 3, 3, 0,
         {
          {1,0,0}, {1,1,0}, {1,1,1}, {2,1,0}, {2,1,1}, {2,2,1}, {3,1,1}, {3,2,0},
          {3,2,1}, {4,1,1}, {3,2,2}, {3,3,1}, {4,2,1}, {3,3,2}, {4,3,1}, {5,2,1},
          {4,3,2}, {5,2,2}, {5,3,1}, {4,3,3}, {5,4,1}, {6,3,1}, {5,3,3}, {5,4,2},
          {6,4,1}, {7,2,2}, {5,4,3}, {7,4,1}, {6,5,2}, {7,5,1}, {6,5,3}, {7,5,2},
          {8,5,1}, {6,5,4}, {7,5,3}, {7,6,2}, {8,5,2}, {7,5,4}, {7,6,4}, {8,6,3},
          {9,6,2}, {8,7,3}, {8,6,5}, {10,7,2}, {11,7,2}, {9,7,5}, {10,8,3}, {11,8,2},
          {11,9,3}, {13,8,2}, {12,9,7}}},
        {"copeland", 3, 2, 2,
         {
          {1,0,0}, {1,1,0}, {1,1,1}, {2,1,1}}},
        {"copeland", 4, 2, 2,
         {
          {1,0,0,0}, {1,1,0,0}, {1,1,1,0}, {1,1,1,1}, {2,1,1,0}, {2,1,1,1}, {2,2,1,1}, {3,1,1,1},
          {3,2,2,1}}},
        {"copeland", 5, 2, 2,
         {
          {1,0,0,0,0}, {1,1,0,0,0}, {1,1,1,0,0}, {1,1,1,1,0}, {2,1,1,0,0}, {1,1,1,1,1}, {2,1,1,1,0}, {2,1,1,1,1},
          {2,2,1,1,0}, {3,1,1,1,0}, {2,2,1,1,1}, {3,1,1,1,1}, {2,2,2,1,1}, {3,2,1,1,1}, {3,2,2,1,0}, {4,1,1,1,1},
          {3,2,2,1,1}, {3,2,2,2,1}, {3,3,2,1,1}, {4,2,2,1,1}, {3,3,2,2,2}, {4,3,2,2,1}, {4,3,3,1,1}, {5,2,2,2,1},
          {4,3,3,2,2}, {5,3,3,2,1}, {5,4,3,2,2}}},
        {"copeland", 6, 2, 2,
         {
          {1,0,0,0,0,0}, {1,1,0,0,0,0}, {1,1,1,0,0,0}, {1,1,1,1,0,0}, {2,1,1,0,0,0}, {1,1,1,1,1,0}, {2,1,1,1,0,0}, {1,1,1,1,1,1},
          {2,1,1,1,1,0}, {2,2,1,1,0,0}, {3,1,1,1,0,0}, {2,1,1,1,1,1}, {2,2,1,1,1,0}, {3,1,1,1,1,0}, {2,2,1,1,1,1}, {2,2,2,1,1,0},
          {3,1,1,1,1,1}, {3,2,1,1,1,0}, {3,2,2,1,0,0}, {4,1,1,1,1,0}, {2,2,2,1,1,1}, {3,2,1,1,1,1}, {3,2,2,1,1,0}, {4,1,1,1,1,1},
          {2,2,2,2,1,1}, {3,2,2,1,1,1}, {3,2,2,2,1,0}, {3,3,1,1,1,1}, {3,3,2,1,1,0}, {4,2,1,1,1,1}, {4,2,2,1,1,0}, {5,1,1,1,1,1},
          {3,2,2,2,1,1}, {3,3,2,1,1,1}, {4,2,2,1,1,1}, {3,2,2,2,2,1}, {3,3,2,2,1,1}, {3,3,2,2,2,0}, {3,3,3,1,1,1}, {4,2,2,2,1,1},
          {4,3,2,1,1,1}, {4,3,2,2,1,0}, {4,3,3,1,1,0}, {5,2,2,1,1,1}, {5,2,2,2,1,0}, {3,3,2,2,2,1}, {4,3,2,2,1,1}, {4,3,3,1,1,1},
          {5,2,2,2,1,1}, {3,3,2,2,2,2}, {3,3,3,2,2,1}, {4,3,2,2,2,1}, {4,3,3,2,1,1}, {4,3,3,2,2,0}, {4,4,2,2,1,1}, {4,4,3,1,1,1},
          {5,2,2,2,2,1}, {5,3,2,2,1,1}, {5,3,3,1,1,1}, {5,3,3,2,1,0}, {6,2,2,2,1,1}, {4,3,3,2,2,1}, {5,3,3,2,1,1}, {4,3,3,2,2,2},
          {4,3,3,3,2,1}, {4,4,3,2,2,1}, {5,3,2,2,2,2}, {5,3,3,2,2,1}, {5,3,3,3,1,1}, {5,4,2,2,2,1}, {5,4,3,2,1,1}, {5,4,3,2,2,0},
          {5,4,4,1,1,1}, {6,3,2,2,2,1}, {6,3,3,2,1,1}, {7,2,2,2,2,1}, {5,4,3,2,2,1}, {4,4,3,3,2,2}, {4,4,3,3,3,1}, {5,3,3,3,2,2},
          {5,4,3,2,2,2}, {5,4,3,3,2,1}, {5,4,4,2,2,1}, {5,5,3,2,2,1}, {6,3,3,2,2,2}, {6,4,3,2,2,1}, {6,4,3,3,1,1}, {6,4,4,2,1,1},
          {7,3,3,2,2,1}, {7,3,3,3,1,1}, {5,4,3,3,3,2}, {5,4,4,3,2,2}, {5,4,4,3,3,1}, {5,5,3,3,3,1}, {5,5,4,2,2,2}, {6,4,3,3,2,2},
          {6,4,4,3,2,1}, {6,5,3,2,2,2}, {6,5,3,3,2,1}, {6,5,4,2,2,1}, {7,3,3,3,2,2}, {7,4,3,2,2,2}, {7,4,4,2,2,1}, {7,4,4,3,1,1},
          {8,3,3,3,2,1}, {5,5,4,3,3,2}, {6,4,4,3,3,2}, {6,5,4,3,2,2}, {6,5,4,3,3,1}, {6,5,5,2,2,2}, {7,4,4,3,2,2}, {7,5,3,3,2,2},
          {7,5,4,3,2,1}, {7,5,5,2,2,1}, {8,4,3,3,2,2}, {6,5,4,4,3,2}, {6,5,5,3,3,2}, {7,5,4,3,3,2}, {7,5,4,4,2,2}, {7,5,5,3,3,1},
          {7,6,4,3,2,2}, {7,6,4,3,3,1}, {7,6,5,2,2,2}, {8,5,4,3,2,2}, {8,5,5,3,2,1}, {9,4,4,3,2,2}, {7,5,5,4,3,2}, {7,6,5,3,3,2},
          {8,5,5,4,2,2}, {8,6,4,3,3,2}, {8,6,5,3,3,1}, {9,5,5,3,2,2}, {7,6,5,4,4,2}, {8,6,5,4,3,2}, {8,7,5,3,3,2}, {9,6,5,4,2,2},
          {9,7,5,4,3,2}, {9,7,6,4,4,2}}},
        {"plurality", 3, 3, 3,
         {
          {1,0,0}, {1,1,0}, {1,1,1}, {2,1,1}, {2,2,1}, {3,2,2}}},
        {"plurality", 4, 3, 0,
         {
          {1,0,0,0}, {1,1,0,0}, {1,1,1,0}, {1,1,1,1}, {2,1,1,0}, {2,1,1,1}, {2,2,1,0}, {2,2,1,1},
          {3,1,1,1}, {2,2,2,1}, {3,2,1,1}, {3,2,2,0}, {3,2,2,1}, {3,3,1,1}, {3,2,2,2}, {3,3,2,1},
          {4,2,2,1}, {3,3,2,2}, {4,3,2,1}, {4,3,2,2}, {4,3,3,1}, {4,4,2,1}, {5,2,2,2}, {4,3,3,2},
          {5,3,3,1}, {5,3,3,2}, {5,4,2,2}, {5,4,3,1}, {5,4,3,2}, {6,4,3,2}, {6,5,3,2}, {6,5,4,2},
          {7,4,4,2}, {7,6,4,2}}},
        {"plurality", 4, 4, 4,
         {
          {1,0,0,0}, {1,1,0,0}, {1,1,1,0}, {1,1,1,1}, {2,1,1,0}, {2,1,1,1}, {2,2,1,0}, {2,2,1,1},
          {3,1,1,1}, {2,2,2,1}, {3,2,1,1}, {3,2,2,0}, {3,2,2,1}, {3,3,1,1}, {3,2,2,2}, {3,3,2,1},
          {4,2,2,1}, {3,3,2,2}, {4,3,2,1}, {4,3,2,2}, {4,3,3,1}, {4,4,2,1}, {5,2,2,2}, {4,3,3,2},
          {5,3,3,1}, {4,4,3,2}, {5,3,3,2}, {5,4,2,2}, {5,4,3,1}, {5,4,3,2}, {5,4,4,2}, {6,4,3,2},
          {6,5,3,2}, {6,5,4,2}, {7,4,4,2}, {7,6,4,2}}},
    };
    return groups;
}

const std::vector<KnownCount>& known_counts()
{
    static const std::vector<KnownCount> counts = [] {
        std::vector<KnownCount> c;
        // With two alternatives all four rules induce the same partition.
        const std::pair<int, std::uint64_t> two[] = {{3, 4}, {4, 9}, {5, 27}, {6, 138}, {7, 1663}, {8, 63764}, {9, 9425479}};
        for (const auto& [n, count] : two)
            for (const char* rule : {"antiplurality", "borda", "copeland", "plurality"})
                c.push_back({rule, n, 2, count});
        const KnownCount rest[] = {
            {"antiplurality", 3, 3, 5},  {"borda", 3, 3, 51},    {"copeland", 3, 3, 4},  {"plurality", 3, 3, 6},
            {"antiplurality", 3, 4, 3},  {"borda", 3, 4, 505},   {"copeland", 3, 4, 4},  {"plurality", 3, 4, 6},
            {"antiplurality", 3, 5, 3},  {"copeland", 3, 5, 4},  {"plurality", 3, 5, 6}, {"antiplurality", 4, 3, 19},
            {"borda", 4, 3, 5255},       {"copeland", 4, 3, 9},  {"plurality", 4, 3, 34}, {"antiplurality", 4, 4, 7},
            {"copeland", 4, 4, 9},       {"plurality", 4, 4, 36}, {"antiplurality", 4, 5, 4}, {"copeland", 4, 5, 9},
            {"plurality", 4, 5, 36},     {"antiplurality", 5, 3, 263}, {"copeland", 5, 3, 27}, {"plurality", 5, 3, 852},
            {"copeland", 6, 3, 138},
        };
        c.insert(c.end(), std::begin(rest), std::end(rest));
        return c;
    }();
    return counts;
}

std::vector<CatalogRecord> golden_catalog()
{
    std::vector<CatalogRecord> records;
    for (const auto& g : golden_groups()) {
        const RuleId rule = RuleId::parse(g.rule);
        for (const auto& rep : g.reps) {
            CatalogRecord r;
            r.rule = g.rule;
            r.n = g.n;
            r.m = g.m;
            r.valid_for_all_m_ge = g.valid_for_all_m_ge;
            r.rep = WeightVector(rep);
            r.digest = fingerprint(rule, r.rep, g.m).digest;
            r.exhaustive = true;
            r.provenance = "golden";
            records.push_back(std::move(r));
        }
    }
    return records;
}

std::vector<CatalogRecord> records_from_enumeration(const EnumerationResult& result)
{
    std::vector<CatalogRecord> records;
    // Copeland classes are computed with two alternatives.
    const int m = result.rule.kind() == RuleKind::copeland ? 2 : result.alternatives;
    const int valid = result.rule.kind() == RuleKind::copeland ? 2 : result.valid_for_all_m_ge;
    const int digest_m = valid > 0 ? valid : m;
    for (const auto& rep : result.representatives) {
        CatalogRecord r;
        r.rule = result.rule.name();
        r.n = result.players;
        r.m = digest_m;
        r.valid_for_all_m_ge = valid;
        r.rep = rep;
        r.digest = fingerprint(result.rule, rep, digest_m).digest;
        r.exhaustive = result.exhaustive;
        r.provenance = "computed";
        records.push_back(std::move(r));
    }
    return records;
}

VerifyReport catalog_verify(const std::vector<CatalogRecord>& records, const VerifyOptions& options)
{
    VerifyReport report;
    report.records = records.size();
    if (records.empty()) {
        report.warnings.push_back("catalog is empty; nothing to verify");
        return report;
    }
    using Key = std::tuple<std::string, int, int>;
    std::map<Key, std::vector<const CatalogRecord*>> groups;
    for (const auto& r : records)
        groups[{r.rule, r.n, r.m}].push_back(&r);
    report.groups = groups.size();

    for (const auto& [key, members] : groups) {
        const auto& [rule_name, n, m] = key;
        const RuleId rule = RuleId::parse(rule_name);
        const std::string where = rule_name + " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
        std::map<std::string, const CatalogRecord*> by_digest;
        bool exhaustive = true;
        int valid = members.front()->valid_for_all_m_ge;
        for (const CatalogRecord* r : members) {
            const std::string label = where + " rep " + r->rep.to_string();
            exhaustive = exhaustive && r->exhaustive;
            if (r->valid_for_all_m_ge != valid)
                report.mismatches.push_back(where + ": records disagree on validForAllMGe");
            if (!r->rep.is_sorted())
                report.mismatches.push_back(label + ": representative is not sorted non-increasingly");
            if (r->rep.is_zero())
                report.mismatches.push_back(label + ": the zero vector is not a class representative");
            const std::string digest = fingerprint(rule, r->rep, m).digest;
            if (digest != r->digest)
                report.mismatches.push_back(label + ": digest does not match the recomputed game");
            auto [it, inserted] = by_digest.try_emplace(digest, r);
            if (!inserted)
                report.mismatches.push_back(label + ": same game as rep " + it->second->rep.to_string());
            if (options.check_minimality && !r->rep.is_zero()) {
                const auto minimal = minimal_representation(rule, r->rep, m);
                if (minimal.sum() != r->rep.sum())
                    report.mismatches.push_back(label + ": not minimal, " + minimal.to_string() + " has a smaller sum");
            }
        }
        const std::uint64_t count = by_digest.size();
        for (const auto& p : known_counts()) {
            if (p.rule != rule_name || p.n != n)
                continue;
            if (!(p.m == m || (valid > 0 && p.m >= valid)))
                continue;
            const std::string cell = where + " against the known count for m=" + std::to_string(p.m);
            if (exhaustive && count != p.count)
                report.mismatches.push_back(cell + ": " + std::to_string(count) + " classes, expected " +
                                            std::to_string(p.count));
            else if (!exhaustive && count > p.count)
                report.mismatches.push_back(cell + ": " + std::to_string(count) + " classes exceed " +
                                            std::to_string(p.count));
            else if (!exhaustive && count < p.count)
                report.warnings.push_back(cell + ": partial list with " + std::to_string(count) + " of " +
                                          std::to_string(p.count) + " classes");
        }
    }
    return report;
}

} // namespace wcg
