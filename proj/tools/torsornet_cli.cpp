#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "torsornet/commands.hpp"

namespace {

int emit(const torsornet::CommandResult& r, const std::string& format) {
    if (format == "machine")
        std::cout << r.machine.dump(2) << "\n";
    else
        std::cout << r.human;
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sheaf cohomology of group networks: torsor analysis and paradox classification"};
    app.require_subcommand(1);

    std::string format = "human";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"human", "machine"}));

    torsornet::CommandOptions opt;
    std::string spec_a, spec_b, morphism;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "Holonomy, invariants, and triviality of a cocycle");
    analyze->add_option("spec", spec_a, "Spec file")->required();
    analyze->add_option("--basepoint", opt.basepoint, "Holonomy basepoint vertex");

    CLI::App* compare = app.add_subcommand(
        "compare", "Isomorphism and fiber equivalence of two paradoxes");
    compare->add_option("spec_a", spec_a, "First spec file")->required();
    compare->add_option("spec_b", spec_b, "Second spec file")->required();
    compare->add_option("--morphism", morphism,
                        "Morphism pair file; checks the supplied pair instead of searching");
    compare->add_option("--max-search", opt.max_search,
                        "Cap on the homomorphism search space");

    CLI::App* cohomology = app.add_subcommand(
        "cohomology", "H0 and H1 of an abelian network sheaf");
    cohomology->add_option("spec", spec_a, "Spec file")->required();

    CLI::App* classify = app.add_subcommand(
        "classify-tree", "Boundary-data classes of a tree up to symmetry");
    classify->add_option("spec", spec_a, "Spec file")->required();
    classify->add_option("--max-search", opt.max_search,
                         "Cap on the boundary state space");

    CLI::App* gallery = app.add_subcommand(
        "gallery", "Run the built-in example gallery against expected values");
    gallery->add_option("--only", opt.only, "Run a single named entry");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return emit(torsornet::cmd_analyze(spec_a, opt), format);
        if (compare->parsed()) {
            std::optional<std::string> m;
            if (!morphism.empty()) m = morphism;
            return emit(torsornet::cmd_compare(spec_a, spec_b, m, opt), format);
        }
        if (cohomology->parsed()) return emit(torsornet::cmd_cohomology(spec_a, opt), format);
        if (classify->parsed()) return emit(torsornet::cmd_classify_tree(spec_a, opt), format);
        if (gallery->parsed()) return emit(torsornet::cmd_gallery(opt), format);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
