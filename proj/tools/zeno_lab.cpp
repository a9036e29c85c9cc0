// zeno_lab.cpp - Command-line front end
//
//   zeno-lab <simulate|sweep|compare|converge> --config <path> [--out <path>]

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "zeno/app.hpp"
#include "zeno/config.hpp"

int main(int argc, char** argv) {
    CLI::App cli{"Two coupled modes under dissipative monitoring: finite bath, master equation and collision model"};
    cli.name("zeno-lab");

    std::string command;
    std::string config_path;
    std::string out_path;
    cli.add_option("command", command, "simulate | sweep | compare | converge")
        ->required()
        ->check(CLI::IsMember({"simulate", "sweep", "compare", "converge"}));
    cli.add_option("--config", config_path, "key = value run configuration")->required();
    cli.add_option("--out", out_path, "output CSV path (overrides the config's output key)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? 0 : zeno::app::ConfigFailure;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "config error: cannot read '" << config_path << "'\n";
        return zeno::app::ConfigFailure;
    }
    std::ostringstream text;
    text << in.rdbuf();

    zeno::config::RunConfig cfg;
    try {
        cfg = zeno::config::parse_config(text.str());
    } catch (const zeno::ConfigError& e) {
        std::cerr << "config error in '" << config_path << "': " << e.what() << '\n';
        return zeno::app::ConfigFailure;
    }

    const std::optional<std::string> out = out_path.empty() ? std::nullopt : std::optional<std::string>(out_path);
    return zeno::app::run(*zeno::app::command_from_string(command), cfg, out);
}
