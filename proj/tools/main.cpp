#include <CLI11.hpp>
#include <iostream>

#include "holonomy/cli.hpp"
#include "holonomy/io.hpp"

namespace {

void add_common(CLI::App* cmd, hol::JobSpec& spec) {
    cmd->add_option("--group", spec.group, "group backend: s3, s3-trivial, dihedral:N, sl2 or a JSON file");
    cmd->add_option("--seed", spec.seed, "random seed");
    cmd->add_option("--tol", spec.tol, "residual tolerance");
    cmd->add_option("--out", spec.out, "write the JSON report here instead of stdout");
}

void add_system(CLI::App* cmd, hol::JobSpec& spec) {
    cmd->add_option("--system", spec.system, "R-matrix system: scalar[:re,im], qsl2[:re,im], gauged-qsl2, identity or a JSON file");
}

void add_diagram(CLI::App* cmd, hol::JobSpec& spec, bool coloring) {
    cmd->add_option("--diagram", spec.diagram, "diagram DSL file")->required();
    cmd->add_option("--bottom", spec.bottom, "bottom-color JSON file (random colors from --seed if absent)");
    if (coloring) cmd->add_option("--coloring", spec.coloring, "full coloring JSON file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Holonomy invariants of colored tangle diagrams"};
    app.require_subcommand(1);
    hol::JobSpec spec;

    auto* eval = app.add_subcommand("eval", "evaluate the functor on a colored diagram");
    add_common(eval, spec);
    add_system(eval, spec);
    add_diagram(eval, spec, true);

    auto* color = app.add_subcommand("color", "propagate a coloring, report holonomies and Wirtinger relations");
    add_common(color, spec);
    add_diagram(color, spec, false);

    auto* ybe = app.add_subcommand("check-ybe", "holonomy Yang-Baxter residuals");
    add_common(ybe, spec);
    add_system(ybe, spec);
    ybe->add_option("--samples", spec.samples, "random triples for infinite groups");

    auto* moves = app.add_subcommand("check-moves", "invariance under every applicable diagram move");
    add_common(moves, spec);
    add_system(moves, spec);
    add_diagram(moves, spec, true);

    auto* gauge = app.add_subcommand("check-gauge", "gauge covariance of the functor");
    add_common(gauge, spec);
    add_system(gauge, spec);
    add_diagram(gauge, spec, true);
    gauge->add_option("--gauge-element", spec.gauge_element, "element name or JSON (random if absent)");
    gauge->add_option("--side", spec.side, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));

    auto* ids = app.add_subcommand("check-identities", "d/w operator identities");
    add_common(ids, spec);
    add_system(ids, spec);
    ids->add_option("--samples", spec.samples, "random points for infinite groups");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    spec.command = app.get_subcommands().front()->get_name();

    hol::JobResult res = hol::run(spec);
    const std::string text = res.report.dump(2) + "\n";
    if (res.report.contains("error")) std::cerr << res.report["message"].get<std::string>() << "\n";
    try {
        if (spec.out.empty())
            std::cout << text;
        else
            hol::write_text(spec.out, text);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return res.exit_code;
}
