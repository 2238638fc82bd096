#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "finscheme/cli/suite.hpp"

namespace fc = finscheme::cli;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw finscheme::Error(finscheme::ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<finscheme::Elem> parse_points(const std::string& csv) {
    std::vector<finscheme::Elem> out;
    std::stringstream ss(csv);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const unsigned long v = std::stoul(item, &used);
        if (used != item.size()) throw finscheme::Error(finscheme::ErrorCode::ParseError, "bad point index `" + item + "`");
        out.push_back(static_cast<finscheme::Elem>(v));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite commutative rings, their spectra, structure sheaves and scheme checks"};
    app.require_subcommand(1);

    finscheme::Guards guards;
    std::string file, open_csv, suite = "all", report_path;
    finscheme::Elem point = 0;
    bool timings = false;

    auto* spec = app.add_subcommand("spec", "List the ideals and prime ideals of a ring");
    spec->add_option("file", file, "ring JSON")->required();
    auto* topo = app.add_subcommand("topology", "Points and opens of the Zariski topology");
    topo->add_option("file", file, "ring JSON")->required();
    auto* sections = app.add_subcommand("sections", "Sections of the structure sheaf over an open");
    sections->add_option("file", file, "ring JSON")->required();
    sections->add_option("--open", open_csv, "comma-separated point indices")->required();
    auto* stalk = app.add_subcommand("stalk", "Stalk of the structure sheaf at a point");
    stalk->add_option("file", file, "ring JSON")->required();
    stalk->add_option("--point", point, "point index")->required();
    auto* verify = app.add_subcommand("verify", "Run verification suites and emit a JSON report");
    verify->add_option("file", file, "ring JSON")->required();
    verify->add_option("--suite", suite, "ring|topology|sheaf|lrs|scheme|all");
    verify->add_option("--report", report_path, "write the JSON report here (- for stdout)");
    verify->add_option("--max-subsets", guards.max_subsets, "bound on 2^|R| subset scans");
    verify->add_option("--max-sections", guards.max_sections, "bound on enumerated sections");
    verify->add_option("--max-covers", guards.max_covers, "bound on covers per open");
    verify->add_flag("--timings", timings, "record per-suite wall time in timings_ms");

    CLI11_PARSE(app, argc, argv);

    try {
        const fc::RingSpec rs = fc::parse_ring_spec(read_file(file));
        if (*spec) std::cout << fc::command_spec(rs, guards).dump(2) << "\n";
        if (*topo) std::cout << fc::command_topology(rs, guards).dump(2) << "\n";
        if (*sections) std::cout << fc::command_sections(rs, parse_points(open_csv), guards).dump(2) << "\n";
        if (*stalk) std::cout << fc::command_stalk(rs, point, guards).dump(2) << "\n";
        if (*verify) {
            const auto report = fc::run_suite(rs, suite, guards, timings);
            const std::string text = fc::to_json(report).dump(2) + "\n";
            if (report_path == "-") {
                std::cout << text;
            } else {
                for (const auto& s : report.suites) std::cout << fc::summary_line(s) << "\n";
                if (!report_path.empty()) {
                    std::ofstream out(report_path);
                    if (!out) throw finscheme::Error(finscheme::ErrorCode::InvalidArgument, "cannot write " + report_path);
                    out << text;
                }
            }
            return report.failed() ? 1 : 0;
        }
    } catch (const finscheme::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
