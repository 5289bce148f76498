// adsing command-line tool.  See README.md for the subcommands.
#include <CLI11.hpp>
#include <iostream>

#include <adsing/cli.hpp>

int main(int argc, char** argv)
{
    CLI::App app{"ad theories with singularities: bordism, exact sequences, Koszul comparison, products"};
    app.require_subcommand(1);

    adsing::RunConfig cfg;
    std::string ring, seq, window, config;
    int n = -1;

    auto add_theory_flags = [&](CLI::App* sub) {
        sub->add_option("--ring", ring, "coefficient modulus (0 for Z)");
        sub->add_option("--sing", seq, "singularity sequence, e.g. \"2,3\" or \"empty,3\"");
        sub->add_option("--window", window, "degree window lo..hi");
        sub->add_option("--config", config, "JSON config with ring, sequence, window");
        sub->add_option("--n", n, "number of singularities to use");
    };

    auto* validate = app.add_subcommand("validate", "validate a complex, ad or ad mod S");
    validate->add_option("input", cfg.inputs, "JSON file")->required()->expected(1);

    auto* homology = app.add_subcommand("homology", "cellular homology of a complex");
    homology->add_option("input", cfg.inputs, "JSON file or point / simplex:N / boundary:N / product:N,M")
        ->required()
        ->expected(1);

    auto* bordism = app.add_subcommand("bordism", "bordism groups of ad / S_n");
    add_theory_flags(bordism);

    auto* koszul = app.add_subcommand("koszul", "Koszul homology of the bordism module");
    add_theory_flags(koszul);

    auto* exactness = app.add_subcommand("exactness", "check the exact sequence for S_n -> S_(n+1)");
    add_theory_flags(exactness);

    auto* product = app.add_subcommand("product", "external product of two ads");
    product->add_option("inputs", cfg.inputs, "two JSON files")->required()->expected(2);
    product->add_option("--output", cfg.output, "write the product as JSON");

    auto* symmetrize = app.add_subcommand("symmetrize", "apply rho_P to an ad mod P");
    symmetrize->add_option("input", cfg.inputs, "JSON file")->required()->expected(1);
    symmetrize->add_option("--output", cfg.output, "write the result as JSON");

    auto* compare = app.add_subcommand("compare", "compare bordism with the Koszul E2 term");
    add_theory_flags(compare);

    auto* stage = app.add_subcommand("stage", "compare ad/P with the stage-s symmetrization");
    add_theory_flags(stage);
    stage->add_option("--stage", cfg.stage, "stage s")->default_val(1);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : adsing::exit_parse;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (!ring.empty())
        cfg.ring = ring;
    for (const auto* opt : app.get_subcommands().front()->get_options())
        if (opt->get_name() == "--sing" && opt->count() > 0)
            cfg.sequence = seq;
    if (!window.empty())
        cfg.window = window;
    if (!config.empty())
        cfg.config = config;
    if (n >= 0)
        cfg.n = n;

    adsing::RunResult r = adsing::run(cfg);
    std::cout << r.report;
    if (!r.error.empty())
        std::cerr << r.error << "\n";
    return r.exit_code;
}
