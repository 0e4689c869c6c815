#pragma once

#include "fanozl/quiver.hpp"
#include "fanozl/zerolocus.hpp"

#include <optional>

namespace fanozl {

// ---------------------------------------------------------------------------
// Machine-readable corpus of families (IDs, presentations and/or quiver
// data, expected invariants) with ingestion, validation and batch
// verification.
// ---------------------------------------------------------------------------

struct CatalogEntry {
    std::string id;           // e.g. "K_508"
    std::string label;        // e.g. "F.2.1"
    int rho = 0;              // Picard rank
    std::string spec_dsl;     // "<ambient> :: <bundle>" (may be empty)
    std::string quiver_path;  // optional path to quiver JSON
    std::optional<long> h0mK, vol, chiT, h11, h21, h31, h22;
    std::string desc;
    std::string source;
    std::map<std::string, std::string> external;  // out-of-scope labels
};

std::vector<CatalogEntry> load_catalog(const std::string& path);

struct FieldDiff {
    std::string field;
    long expected = 0, computed = 0;
};

struct EntryResult {
    std::string id;
    bool pass = false;
    bool indeterminate = false;
    std::string error;             // nonempty on computation failure
    std::vector<FieldDiff> diffs;  // mismatched fields
    InvariantReport report;
    double seconds = 0;
};

struct VerifyReport {
    std::vector<EntryResult> entries;
    bool all_pass() const {
        return std::all_of(entries.begin(), entries.end(),
                           [](const EntryResult& e) { return e.pass; });
    }
};

struct Selector {
    bool all = true;
    std::vector<std::string> ids;
    int rho = 0;  // 0 = any
    bool matches(const CatalogEntry& e) const;
};

// resolve the presentation (parsing the DSL or translating the quiver datum)
ZeroLocusSpec entry_spec(const CatalogEntry& e, const std::string& data_dir);

// verification is parallel across entries (worker_threads()) with a
// deterministic, order-independent aggregation
VerifyReport verify(const std::vector<CatalogEntry>& entries,
                    const Selector& sel, const std::string& data_dir);

std::string report_csv(const VerifyReport& r);
std::string report_json(const VerifyReport& r);
std::string report_json(const InvariantReport& r);

}  // namespace fanozl
