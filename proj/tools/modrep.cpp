#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "modrep/harness.hpp"

using namespace modrep::harness;

int main(int argc, char** argv) {
    CLI::App app{"exact checks for mod-p representations of SL2 over local function fields"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    Config cfg;
    std::string suite, format = "text", out;
    verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--p", cfg.p, "residue characteristic")->required();
    verify->add_option("--e", cfg.e, "residue degree, q = p^e")->required();
    verify->add_option("--precision", cfg.precision, "t-adic precision")->capture_default_str();
    verify->add_option("--radius", cfg.radius, "tree radius")->capture_default_str();
    verify->add_option("--level", cfg.level, "principal-series level cap")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "sampler seed")->capture_default_str();
    verify->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    verify->add_option("--out", out, "write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Report rep;
    try {
        rep = run_suite(suite, cfg);
    } catch (const config_error& e) {
        std::cerr << "modrep: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "modrep: " << e.what() << "\n";
        return 3;
    }
    const std::string text = emit(rep, format == "json" ? Format::json : Format::text);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!(f << text)) {
            std::cerr << "modrep: cannot write " << out << "\n";
            return 3;
        }
    }
    return rep.exit_code();
}
