#pragma once

#include <string>
#include <vector>

namespace anisoperim {

enum class TableFormat { Csv, Json, Md };

// "csv" | "json" | "md"; anything else is invalid_argument.
TableFormat parse_table_format(const std::string& name);

// One row of a completed scenario run. `computed` is the scenario's headline
// number; `pass` additionally requires the scenario's internal verdict checks,
// so a row can fail with computed == expected. `note` collects sub-results or
// the failure reason and is not part of the emitted table.
struct CaseRow {
    std::string id;
    double computed = 0.0;
    double expected = 0.0;
    double tol = 0.0;
    bool pass = false;
    double seconds = 0.0;
    std::string note;
};

// Registry of named experiments, one per worked construction: each scenario
// is self-contained, building its own norm, sets, windows, and solver
// parameters with fixed seeds and grid sizes.
class Casebook {
public:
    // Canonical scenario ids, sorted. The three union-cone sub-cases are
    // addressable through run() under "<id>-a|b|c" but are folded into one
    // canonical row.
    static std::vector<std::string> ids();

    // Runs one scenario (canonical or sub-case id) or, for "all", every
    // canonical scenario in id order. Rows are stored for emit().
    const std::vector<CaseRow>& run(const std::string& id_or_all);

    const std::vector<CaseRow>& rows() const { return rows_; }
    bool all_passed() const;

    // Wall-clock seconds are recorded only when enabled; the default zero
    // keeps repeated emissions byte-identical.
    void record_timing(bool on) { timing_ = on; }

    // Upper bound on worker threads for "all" runs. Scenarios land in fixed
    // row slots, so the table is identical at any cap.
    void max_threads(int n);

    // Emits the stored rows with columns id, computed, expected, tol, status,
    // seconds. Requires a completed run.
    std::string emit(TableFormat format) const;

private:
    std::vector<CaseRow> rows_;
    bool timing_ = false;
    int threads_ = 1;
};

}  // namespace anisoperim
