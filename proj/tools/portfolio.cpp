#include <unistd.h>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "portfolio/workspace.hpp"

namespace fs = std::filesystem;

namespace {

std::optional<fs::path> to_path(const std::string& flag) {
    if (flag.empty()) return std::nullopt;
    return fs::path(flag);
}

std::string prompt_line(const std::string& prompt) {
    std::cout << prompt << std::flush;
    std::string line;
    std::getline(std::cin, line);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return line;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Journal-portfolio overlays, diversity scores, and similarity matrices\n"
                 "from Web of Science \"Analyze Results\" exports."};
    app.set_version_flag("--version", "portfolio 1.0.0");
    app.require_subcommand(1);

    std::string workspace_flag;
    std::string basemap_flag;

    // analyze
    std::string export_arg;
    std::string label_flag;
    double min_coverage = 0.5;
    bool interactive = false;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Ingest one unit's export: update the ledgers, write <LABEL>.vos");
    analyze->add_option("export", export_arg, "Tab-delimited \"Analyze Results\" export file");
    analyze->add_option("-l,--label", label_flag,
                        "Unit label (default: the export filename stem, uppercased)");
    analyze->add_option("--min-coverage", min_coverage,
                        "Warn when the matched share of records falls below this")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    analyze->add_flag("-i,--interactive", interactive,
                      "Prompt for the export path when it is not given");
    analyze->add_option("-w,--workspace", workspace_flag,
                        "Workspace directory (default: $PORTFOLIO_WORKSPACE, then the cwd)");
    analyze->add_option("-b,--basemap", basemap_flag,
                        "Base map file (default: <workspace>/basemap.tsv)");

    // compare
    std::string kind_flag = "both";
    CLI::App* compare = app.add_subcommand(
        "compare", "Write cross-unit similarity matrices from the matrix ledger");
    compare->add_option("-k,--kind", kind_flag, "Similarity kind")
        ->check(CLI::IsMember({"cosine", "cooccurrence", "both"}))
        ->capture_default_str();
    compare->add_option("-w,--workspace", workspace_flag,
                        "Workspace directory (default: $PORTFOLIO_WORKSPACE, then the cwd)");
    compare->add_option("-b,--basemap", basemap_flag,
                        "Base map file (default: <workspace>/basemap.tsv)");

    // report
    std::string sort_flag = "d2s";
    std::optional<long> top;
    long top_flag = 0;
    CLI::App* report = app.add_subcommand(
        "report", "Print the diversity ledger as a ranked table");
    report->add_option("-s,--sort", sort_flag, "Sort key: d2s, delta, or n (matched records)")
        ->check(CLI::IsMember({"d2s", "delta", "n"}))
        ->capture_default_str();
    CLI::Option* top_opt =
        report->add_option("-t,--top", top_flag, "Show only the first N units")
            ->check(CLI::PositiveNumber);
    report->add_option("-w,--workspace", workspace_flag,
                       "Workspace directory (default: $PORTFOLIO_WORKSPACE, then the cwd)");

    // reset
    bool yes = false;
    CLI::App* reset = app.add_subcommand(
        "reset", "Remove the ledgers and generated outputs, keep the base map and inputs");
    reset->add_flag("-y,--yes", yes, "Do not ask for confirmation");
    reset->add_option("-w,--workspace", workspace_flag,
                      "Workspace directory (default: $PORTFOLIO_WORKSPACE, then the cwd)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return portfolio::exit_usage;
    }

    const portfolio::Workspace ws =
        portfolio::Workspace::resolve(to_path(workspace_flag), to_path(basemap_flag));

    if (*analyze) {
        if (export_arg.empty() && interactive)
            export_arg = prompt_line("export file: ");
        if (export_arg.empty()) {
            std::cerr << "error: no export file given (pass a path or use --interactive)\n";
            return portfolio::exit_usage;
        }
        portfolio::AnalyzeOptions opt;
        opt.export_path = export_arg;
        if (!label_flag.empty()) opt.label = label_flag;
        opt.min_coverage = min_coverage;
        return portfolio::cmd_analyze(ws, opt, std::cout, std::cerr);
    }

    if (*compare) {
        portfolio::CompareKind kind = portfolio::CompareKind::both;
        if (kind_flag == "cosine") kind = portfolio::CompareKind::cosine;
        else if (kind_flag == "cooccurrence") kind = portfolio::CompareKind::cooccurrence;
        return portfolio::cmd_compare(ws, kind, std::cout, std::cerr);
    }

    if (*report) {
        portfolio::ReportKey key = portfolio::ReportKey::true_diversity;
        if (sort_flag == "delta") key = portfolio::ReportKey::delta;
        else if (sort_flag == "n") key = portfolio::ReportKey::matched_records;
        if (top_opt->count() > 0) top = top_flag;
        return portfolio::cmd_report(ws, key, top, std::cout, std::cerr);
    }

    // reset
    if (!yes) {
        if (!isatty(STDIN_FILENO)) {
            std::cerr << "error: reset removes files; pass --yes to confirm\n";
            return portfolio::exit_usage;
        }
        const std::string answer = prompt_line(
            "Remove the ledgers and generated outputs from '" + ws.root.string() +
            "'? [y/N] ");
        if (answer != "y" && answer != "Y" && answer != "yes") {
            std::cerr << "aborted\n";
            return portfolio::exit_usage;
        }
    }
    return portfolio::cmd_reset(ws, std::cout, std::cerr);
}
