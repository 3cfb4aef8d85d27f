#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "portfolio/diversity.hpp"

namespace portfolio {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;
inline constexpr int exit_conflict = 3;

// A workspace is a directory holding the base map, the two ledgers, and the
// generated outputs. Resolution order for the root: --workspace flag, then
// PORTFOLIO_WORKSPACE, then the current directory.
struct Workspace {
    std::filesystem::path root;
    std::filesystem::path basemap_path;

    std::filesystem::path matrix_ledger_path() const { return root / "matrix.tsv"; }
    std::filesystem::path diversity_ledger_path() const { return root / "rao.tsv"; }
    std::filesystem::path lock_path() const { return root / "portfolio.lock"; }

    static Workspace resolve(const std::optional<std::filesystem::path>& root_flag,
                             const std::optional<std::filesystem::path>& basemap_flag);
};

// Advisory single-writer lock: creating the lock file is the acquisition
// (O_EXCL), removal happens in the destructor. A held lock raises LockError;
// a stale file left by a crash must be removed by hand (the message says so).
class WorkspaceLock {
public:
    explicit WorkspaceLock(const std::filesystem::path& path);
    ~WorkspaceLock();
    WorkspaceLock(const WorkspaceLock&) = delete;
    WorkspaceLock& operator=(const WorkspaceLock&) = delete;

private:
    std::filesystem::path path_;
};

// rao.tsv ledger: header unit/delta/true_diversity/n_journals/
// matched_records/coverage, one row per unit, 6-decimal reals.
std::vector<DiversityReport> read_diversity_ledger(std::istream& in);
void write_diversity_ledger(const std::vector<DiversityReport>& rows, std::ostream& out);

struct AnalyzeOptions {
    std::filesystem::path export_path;
    std::optional<std::string> label;  // default: uppercased filename stem
    double min_coverage = 0.5;         // below this, a warning is printed
};

enum class CompareKind { cosine, cooccurrence, both };
enum class ReportKey { true_diversity, delta, matched_records };

// Subcommand bodies. Human-readable results go to out, diagnostics and
// warnings to err; the return value is the process exit status (exit_*
// constants above). Usage errors are handled by the CLI before these run.
int cmd_analyze(const Workspace& ws, const AnalyzeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_compare(const Workspace& ws, CompareKind kind, std::ostream& out, std::ostream& err);
int cmd_report(const Workspace& ws, ReportKey key, std::optional<long> top, std::ostream& out, std::ostream& err);
int cmd_reset(const Workspace& ws, std::ostream& out, std::ostream& err);

// AA from aa.txt: filename stem with ASCII letters uppercased.
std::string default_label(const std::filesystem::path& export_path);

}  // namespace portfolio
