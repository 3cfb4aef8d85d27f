#include "portfolio/workspace.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

#include "portfolio/basemap.hpp"
#include "portfolio/errors.hpp"
#include "portfolio/export.hpp"
#include "portfolio/ingest.hpp"
#include "portfolio/matrix.hpp"

namespace fs = std::filesystem;

namespace portfolio {
namespace {

constexpr std::string_view kRaoHeader =
    "unit\tdelta\ttrue_diversity\tn_journals\tmatched_records\tcoverage";

std::string fixed6(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// The label doubles as a ledger key and an output filename stem.
void check_unit_label(const std::string& label) {
    if (label.empty()) throw DataError("unit label must not be empty");
    if (label.find_first_of("\t\n\r/\\") != std::string::npos)
        throw DataError("unit label '" + label +
                        "' contains a tab, line break, or path separator");
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

double parse_double_field(const std::string& field, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || errno != 0 || end != field.c_str() + field.size() || !std::isfinite(v))
        throw ParseError(line_no, "malformed number '" + field + "'");
    return v;
}

std::int64_t parse_int_field(const std::string& field, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(field.c_str(), &end, 10);
    if (field.empty() || errno != 0 || end != field.c_str() + field.size() || v < 0)
        throw ParseError(line_no, "malformed count '" + field + "'");
    return v;
}

BaseMap load_map(const Workspace& ws, std::ostream& err) {
    std::ifstream in(ws.basemap_path, std::ios::binary);
    if (!in)
        throw DataError("cannot open base map '" + ws.basemap_path.string() + "'");
    BaseMap map = load_basemap(in);
    for (const std::string& w : map.warnings()) err << "warning: " << w << '\n';
    return map;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("failed writing '" + path.string() + "'");
        }
    }
    fs::rename(tmp, path);
}

// Exception-to-exit-status boundary shared by the subcommand bodies.
template <typename Fn>
int run_command(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const LockError& e) {
        err << "error: " << e.what() << '\n';
        return exit_conflict;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
}

}  // namespace

Workspace Workspace::resolve(const std::optional<fs::path>& root_flag,
                             const std::optional<fs::path>& basemap_flag) {
    Workspace ws;
    if (root_flag) {
        ws.root = *root_flag;
    } else if (const char* env = std::getenv("PORTFOLIO_WORKSPACE"); env && *env) {
        ws.root = env;
    } else {
        ws.root = fs::current_path();
    }
    ws.basemap_path = basemap_flag ? *basemap_flag : ws.root / "basemap.tsv";
    return ws;
}

WorkspaceLock::WorkspaceLock(const fs::path& path) : path_(path) {
    const int fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        if (errno == EEXIST)
            throw LockError("lock file '" + path.string() +
                            "' is already held by another command; if its owner "
                            "crashed, remove the file by hand");
        throw DataError("cannot create lock file '" + path.string() +
                        "': " + std::strerror(errno));
    }
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%ld\n", static_cast<long>(::getpid()));
    if (n > 0) {
        const ssize_t written = ::write(fd, buf, static_cast<std::size_t>(n));
        (void)written;  // best-effort; the file's existence is the lock
    }
    ::close(fd);
}

WorkspaceLock::~WorkspaceLock() {
    std::error_code ec;
    fs::remove(path_, ec);
}

std::vector<DiversityReport> read_diversity_ledger(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(0, "empty diversity ledger");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRaoHeader)
        throw ParseError(1, "malformed diversity ledger header");

    std::vector<DiversityReport> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_tabs(line);
        if (fields.size() != 6)
            throw ParseError(line_no, "expected 6 tab-separated fields, found " +
                                          std::to_string(fields.size()));
        DiversityReport r;
        r.unit_label = fields[0];
        if (r.unit_label.empty()) throw ParseError(line_no, "empty unit label");
        r.delta = parse_double_field(fields[1], line_no);
        r.true_diversity = parse_double_field(fields[2], line_no);
        r.n_journals = parse_int_field(fields[3], line_no);
        r.matched_records = parse_int_field(fields[4], line_no);
        r.coverage = parse_double_field(fields[5], line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_diversity_ledger(const std::vector<DiversityReport>& rows, std::ostream& out) {
    out << kRaoHeader << '\n';
    for (const DiversityReport& r : rows)
        out << r.unit_label << '\t' << fixed6(r.delta) << '\t' << fixed6(r.true_diversity)
            << '\t' << r.n_journals << '\t' << r.matched_records << '\t' << fixed6(r.coverage)
            << '\n';
    if (!out) throw std::runtime_error("failed writing diversity ledger");
}

std::string default_label(const fs::path& export_path) {
    std::string stem = export_path.stem().string();
    for (char& c : stem) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return stem;
}

int cmd_analyze(const Workspace& ws, const AnalyzeOptions& opt, std::ostream& out,
                std::ostream& err) {
    return run_command(err, [&]() -> int {
        const std::string label = opt.label ? *opt.label : default_label(opt.export_path);
        check_unit_label(label);

        const BaseMap map = load_map(ws, err);

        std::ifstream export_in(opt.export_path, std::ios::binary);
        if (!export_in)
            throw DataError("cannot open export file '" + opt.export_path.string() + "'");
        const RawPortfolio raw = parse_analyze_export(export_in, label);
        export_in.close();

        // All ledger reads and writes happen under the lock.
        WorkspaceLock lock(ws.lock_path());

        const PortfolioDistribution dist = match_portfolio(raw, map);
        for (const std::string& w : dist.warnings) err << "warning: " << w << '\n';

        std::optional<DiversityReport> report;
        if (dist.matched_records > 0) report = diversity_report(dist, map);

        PortfolioMatrix matrix = [&] {
            std::ifstream ledger_in(ws.matrix_ledger_path(), std::ios::binary);
            if (!ledger_in) return PortfolioMatrix(map);
            return read_matrix_ledger(ledger_in, map);
        }();
        matrix.upsert(dist);
        {
            std::ostringstream ledger;
            write_matrix_ledger(matrix, ledger);
            write_text_atomic(ws.matrix_ledger_path(), ledger.str());
        }

        std::vector<DiversityReport> rows;
        bool had_rao_ledger = false;
        {
            std::ifstream rao_in(ws.diversity_ledger_path(), std::ios::binary);
            if (rao_in) {
                had_rao_ledger = true;
                rows = read_diversity_ledger(rao_in);
            }
        }
        const auto row_it = std::find_if(rows.begin(), rows.end(), [&](const DiversityReport& r) {
            return r.unit_label == label;
        });
        if (report) {
            if (row_it != rows.end())
                *row_it = *report;
            else
                rows.push_back(*report);
        } else if (row_it != rows.end()) {
            rows.erase(row_it);  // unit no longer has a defined diversity
        }
        if (had_rao_ledger || !rows.empty()) {
            std::ostringstream rao;
            write_diversity_ledger(rows, rao);
            write_text_atomic(ws.diversity_ledger_path(), rao.str());
        }

        {
            std::ostringstream vos;
            write_vos_map(build_overlay(map, dist), vos);
            write_text_atomic(ws.root / (label + ".vos"), vos.str());
        }

        char summary[256];
        if (report) {
            std::snprintf(summary, sizeof summary,
                          "%s  delta=%.6f  d2s=%.6f  coverage=%.4f  matched=%lld/%lld  "
                          "journals=%lld\n",
                          label.c_str(), report->delta, report->true_diversity, dist.coverage,
                          static_cast<long long>(dist.matched_records),
                          static_cast<long long>(raw.total_records),
                          static_cast<long long>(report->n_journals));
        } else {
            std::snprintf(summary, sizeof summary,
                          "%s  coverage=%.4f  matched=0/%lld  (diversity not computed)\n",
                          label.c_str(), dist.coverage,
                          static_cast<long long>(raw.total_records));
        }
        out << summary;

        if (dist.coverage < opt.min_coverage) {
            char warning[160];
            std::snprintf(warning, sizeof warning,
                          "warning: unit '%s': coverage %.4f is below the threshold %.4f\n",
                          label.c_str(), dist.coverage, opt.min_coverage);
            err << warning;
        }
        return exit_ok;
    });
}

int cmd_compare(const Workspace& ws, CompareKind kind, std::ostream& out, std::ostream& err) {
    return run_command(err, [&]() -> int {
        const BaseMap map = load_map(ws, err);

        std::ifstream ledger_in(ws.matrix_ledger_path(), std::ios::binary);
        if (!ledger_in)
            throw DataError("matrix ledger '" + ws.matrix_ledger_path().string() +
                            "' not found; run analyze first");
        const PortfolioMatrix matrix = read_matrix_ledger(ledger_in, map);
        ledger_in.close();
        if (matrix.unit_count() < 2)
            throw DataError("compare needs at least 2 units in the matrix ledger, found " +
                            std::to_string(matrix.unit_count()));

        WorkspaceLock lock(ws.lock_path());

        std::vector<std::int64_t> weights;
        weights.reserve(matrix.unit_count());
        for (std::size_t u = 0; u < matrix.unit_count(); ++u)
            weights.push_back(matrix.column_sum(u));
        const OverlayMap units = unit_overlay(matrix.unit_labels(), weights);

        const auto emit = [&](const char* name, auto&& writer) {
            std::ostringstream s;
            writer(s);
            write_text_atomic(ws.root / name, s.str());
        };

        std::size_t artifacts = 0;
        if (kind != CompareKind::cooccurrence) {
            const SimilarityMatrix cos = cosine_matrix(matrix);
            for (const std::string& w : cos.warnings) err << "warning: " << w << '\n';
            emit("cosine.net", [&](std::ostream& s) { write_pajek(cos, s); });
            emit("cos.vos", [&](std::ostream& s) { write_vos_map(units, s); });
            emit("netw_cos.vos", [&](std::ostream& s) { write_vos_network(cos, s); });
            emit("cosine.csv", [&](std::ostream& s) { write_csv_matrix(cos, s); });
            artifacts += 4;
        }
        if (kind != CompareKind::cosine) {
            const SimilarityMatrix cooc = cooccurrence_matrix(matrix);
            emit("coocc.dat", [&](std::ostream& s) { write_ucinet_dl(cooc, s); });
            emit("coocc.vos", [&](std::ostream& s) { write_vos_map(units, s); });
            emit("netw_coocc.vos", [&](std::ostream& s) { write_vos_network(cooc, s); });
            emit("coocc.csv", [&](std::ostream& s) { write_csv_matrix(cooc, s); });
            artifacts += 4;
        }
        out << "compared " << matrix.unit_count() << " units; wrote " << artifacts
            << " files to " << ws.root.string() << '\n';
        return exit_ok;
    });
}

int cmd_report(const Workspace& ws, ReportKey key, std::optional<long> top, std::ostream& out,
               std::ostream& err) {
    return run_command(err, [&]() -> int {
        std::ifstream rao_in(ws.diversity_ledger_path(), std::ios::binary);
        if (!rao_in)
            throw DataError("diversity ledger '" + ws.diversity_ledger_path().string() +
                            "' not found; run analyze first");
        std::vector<DiversityReport> rows = read_diversity_ledger(rao_in);
        if (rows.empty()) throw DataError("diversity ledger has no units");

        const auto value = [key](const DiversityReport& r) -> double {
            switch (key) {
                case ReportKey::delta: return r.delta;
                case ReportKey::matched_records: return static_cast<double>(r.matched_records);
                case ReportKey::true_diversity: break;
            }
            return r.true_diversity;
        };
        std::sort(rows.begin(), rows.end(),
                  [&](const DiversityReport& a, const DiversityReport& b) {
                      const double va = value(a), vb = value(b);
                      if (va != vb) return va > vb;
                      return a.unit_label < b.unit_label;
                  });
        if (top && *top >= 0 && static_cast<std::size_t>(*top) < rows.size())
            rows.resize(static_cast<std::size_t>(*top));

        char header[200];
        std::snprintf(header, sizeof header, "%-16s  %8s  %8s  %8s  %8s\n", "unit", "d2s",
                      "delta", "N", "coverage");
        out << header;
        for (const DiversityReport& r : rows) {
            char line[200];
            std::snprintf(line, sizeof line, "%-16s  %8.4f  %8.4f  %8lld  %8.4f\n",
                          r.unit_label.c_str(), r.true_diversity, r.delta,
                          static_cast<long long>(r.matched_records), r.coverage);
            out << line;
        }
        return exit_ok;
    });
}

int cmd_reset(const Workspace& ws, std::ostream& out, std::ostream& err) {
    return run_command(err, [&]() -> int {
        WorkspaceLock lock(ws.lock_path());

        std::vector<fs::path> victims = {
            ws.matrix_ledger_path(), ws.diversity_ledger_path(),
            ws.root / "cosine.net",  ws.root / "coocc.dat",
            ws.root / "cosine.csv",  ws.root / "coocc.csv",
        };
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator(ws.root, ec))
            if (entry.is_regular_file() && entry.path().extension() == ".vos")
                victims.push_back(entry.path());
        if (ec) throw DataError("cannot list workspace '" + ws.root.string() + "'");

        std::size_t removed = 0;
        for (const fs::path& p : victims) {
            std::error_code remove_ec;
            if (fs::remove(p, remove_ec)) ++removed;
        }
        out << "removed " << removed << " generated file(s) from " << ws.root.string() << '\n';
        return exit_ok;
    });
}

}  // namespace portfolio
