#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pdeseries/commands.hpp"

namespace {

pdeseries::Point parse_query(const std::string& text) {
    pdeseries::Point p{};
    std::stringstream ss(text);
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= 4) throw pdeseries::ProblemError("query needs x,y,z[,t]");
        try {
            p[k++] = std::stod(item);
        } catch (const std::logic_error&) {
            throw pdeseries::ProblemError("bad number in query '" + text + "'");
        }
    }
    if (k < 3) throw pdeseries::ProblemError("query needs x,y,z[,t]");
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power-series solutions of evolution, heat and linearized flow problems"};
    app.require_subcommand(1);

    pdeseries::SolveOptions solve;
    std::string solve_file;
    std::string sample, csv;
    auto* s = app.add_subcommand("solve", "Series coefficients, closed form and residual check");
    s->add_option("file", solve_file, "problem file")->required();
    s->add_option("--order", solve.order, "highest coefficient index")->capture_default_str();
    s->add_flag("--verify", solve.verify, "finite-difference residual check");
    s->add_option("--tolerance", solve.tolerance, "residual tolerance for --verify")->capture_default_str();
    s->add_option("--sample", sample, "sample grid, e.g. x:-1:1:5,t:0:0.2:3");
    s->add_option("--csv", csv, "CSV output path (stdout when omitted)");

    pdeseries::FlowOptions flow;
    std::string flow_file, mode = "standard", query;
    auto* f = app.add_subcommand("flow", "Vorticity, velocity and pressure of a linearized flow");
    f->add_option("file", flow_file, "problem file")->required();
    f->add_flag("--quadrature", flow.quadrature, "sample velocity with heat-kernel quadrature");
    f->add_option("--mode", mode, "inverse Laplacian kernel: standard or paper_literal")->capture_default_str();
    f->add_flag("--verify", flow.verify, "finite-difference check of the vorticity equation");
    f->add_option("--tolerance", flow.tolerance, "residual tolerance for --verify")->capture_default_str();
    f->add_option("--sample", sample, "sample grid, e.g. x:-1:1:5,y:0:0:1,z:0:0:1,t:0:1:3");
    f->add_option("--csv", csv, "CSV output path; one file per velocity component");
    f->add_option("--query", query, "pressure query point x,y,z[,t]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : pdeseries::kExitUsage;
    }

    try {
        if (*s) {
            if (!sample.empty()) solve.sample = sample;
            if (!csv.empty()) solve.csv = csv;
            return pdeseries::cmd_solve(solve_file, solve);
        }
        if (!sample.empty()) flow.sample = sample;
        if (!csv.empty()) flow.csv = csv;
        flow.mode = pdeseries::parse_kernel_mode(mode);
        if (!query.empty()) flow.query = parse_query(query);
        return pdeseries::cmd_flow(flow_file, flow);
    } catch (const pdeseries::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return pdeseries::kExitUsage;
    }
}
