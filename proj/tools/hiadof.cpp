// hiadof: DoF regions, Table I classification, CSIT octuples and HIA simulation.
#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace hia;
    CLI::App app{"Exact DoF regions and hybrid-CSIT interference alignment for the 2-user MIMO interference channel"};
    app.require_subcommand(1);

    std::string config_text = "4,5,3,2";
    std::string model_text = "hybrid1";
    std::string json_path;

    auto* region_cmd = app.add_subcommand("region", "print the bounds and vertices of a DoF region");
    region_cmd->add_option("--config", config_text, "M1,M2,N1,N2")->required();
    region_cmd->add_option("--model", model_text, "delayed | hybrid1 | hybrid2 | instantaneous")->required();
    region_cmd->add_option("--json", json_path, "also write the region document here");

    auto* classify_cmd = app.add_subcommand("classify", "Table I row, A.I.3b subcase and computed region relations");
    classify_cmd->add_option("--config", config_text, "M1,M2,N1,N2")->required();

    std::string filter;
    bool check_disjoint = false;
    auto* models_cmd = app.add_subcommand("models", "classify all 3^8 CSIT octuples");
    models_cmd->add_option("--filter", filter, "list a sample of one class: instantaneous | hybrid1 | hybrid2 | delayed | unknown");
    models_cmd->add_flag("--check-disjoint", check_disjoint, "verify no octuple satisfies two class definitions");

    cli::SimulateOptions sim;
    std::string corner_text = "primary";
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo run of the HIA scheme or the alternating plan");
    sim_cmd->add_option("--config", config_text, "M1,M2,N1,N2")->capture_default_str();
    sim_cmd->add_option("--model", model_text, "hybrid1 | hybrid2")->capture_default_str();
    sim_cmd->add_option("--corner", corner_text, "primary | secondary")->capture_default_str();
    sim_cmd->add_option("--trials", sim.trials, "number of channel realizations")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "master seed")->capture_default_str();
    sim_cmd->add_flag("--alternating", sim.alternating, "run the 16-slot alternating-CSIT plan for (4,5,3,2)");
    sim_cmd->add_option("--json", json_path, "write the region document with a sim summary");

    int sweep = 0;
    std::string out_dir;
    auto* export_cmd = app.add_subcommand("export", "write region documents for a sweep of configs plus index.csv");
    export_cmd->add_option("--sweep", sweep, "largest antenna count in the sweep")->required();
    export_cmd->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (region_cmd->parsed()) {
            return cli::cmd_region(cli::parse_config(config_text), parse_region_model(model_text), json_path, std::cout);
        }
        if (classify_cmd->parsed()) {
            return cli::cmd_classify(cli::parse_config(config_text), std::cout);
        }
        if (models_cmd->parsed()) {
            return cli::cmd_models(filter, check_disjoint, std::cout);
        }
        if (sim_cmd->parsed()) {
            sim.config = cli::parse_config(config_text);
            sim.model = parse_region_model(model_text);
            sim.corner = parse_corner(corner_text);
            sim.json_path = json_path;
            return cli::cmd_simulate(sim, std::cout, std::cerr);
        }
        if (export_cmd->parsed()) {
            return cli::cmd_export(sweep, out_dir, std::cout);
        }
    } catch (const ExportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::failed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::failed;
    }
    return cli::usage;
}
