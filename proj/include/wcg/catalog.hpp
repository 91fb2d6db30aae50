#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wcg/enumeration.hpp"
#include "wcg/rules.hpp"

namespace wcg {

/// One class of a (rule, n, m) enumeration. JSON-lines form, keys in order:
/// "rule","n","m","validForAllMGe","rep","digest","exhaustive","provenance".
struct CatalogRecord {
    std::string rule;
    int n = 0;
    int m = 0;
    /// 0 when the record is only claimed for this m (written as null).
    int valid_for_all_m_ge = 0;
    WeightVector rep;
    std::string digest;
    bool exhaustive = true;
    /// "computed" or "golden".
    std::string provenance = "computed";

    friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

std::string to_json_line(const CatalogRecord& r);
CatalogRecord parse_json_line(std::string_view line);

std::string write_catalog(const std::vector<CatalogRecord>& records);
std::vector<CatalogRecord> read_catalog(std::string_view text);

/// Known minimal representatives of one (rule, n, m) cell.
struct GoldenGroup {
    std::string rule;
    int n;
    int m;
    int valid_for_all_m_ge;
    std::vector<std::vector<std::int64_t>> reps;
};

const std::vector<GoldenGroup>& golden_groups();

/// Exactly known class counts (zero weight vector excluded).
struct KnownCount {
    std::string rule;
    int n;
    int m;
    std::uint64_t count;
};

const std::vector<KnownCount>& known_counts();

/// Golden groups as records, with digests computed here.
std::vector<CatalogRecord> golden_catalog();

std::vector<CatalogRecord> records_from_enumeration(const EnumerationResult& result);

struct VerifyOptions {
    bool check_minimality = true;
};

struct VerifyReport {
    std::size_t records = 0;
    std::size_t groups = 0;
    std::vector<std::string> mismatches;
    std::vector<std::string> warnings;

    bool ok() const { return mismatches.empty(); }
};

/// Recomputes every digest and, per (rule, n, m) group, checks pairwise
/// distinct games, minimality of each representative, and the class count
/// against the known numbers.
VerifyReport catalog_verify(const std::vector<CatalogRecord>& records, const VerifyOptions& options = {});

} // namespace wcg
