#include <tvar/cli.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>

#ifndef POLYDIV_DEFAULT_FIXTURES
#define POLYDIV_DEFAULT_FIXTURES "fixtures"
#endif

namespace fs = std::filesystem;

namespace {

// Relative paths that do not exist are looked up in the fixture directory.
fs::path resolve_input(const std::string& name) {
    fs::path p(name);
    if (p.is_absolute() || fs::exists(p)) return p;
    const char* env = std::getenv("POLYDIV_FIXTURES");
    fs::path dir = env && *env ? fs::path(env) : fs::path(POLYDIV_DEFAULT_FIXTURES);
    return dir / p;
}

const std::map<std::string, std::string>& summaries() {
    static const std::map<std::string, std::string> m{
        {"normalize", "weight cone and divisor of the algebra generated by elements"},
        {"eval", "evaluate a divisor at a degree"},
        {"degree", "degree polyhedron of a divisor over P1"},
        {"proper", "properness check with a witness"},
        {"sections", "graded piece of a divisor at a degree"},
        {"member", "membership of elements in the algebra of a divisor"},
        {"generators", "homogeneous generators in a box"},
        {"dpd", "rank-one divisor of a list of elements"},
        {"mono-closure", "integral closure of a monomial ideal"},
        {"mono-normal", "normality of a monomial ideal"},
        {"rees", "Rees divisor and Newton polyhedron of an ideal"},
        {"closure-piece", "graded piece of the closure of a power of an ideal"},
        {"pair-check", "conditions on a Rees pair"},
        {"normal-sufficient", "sufficient normality criterion for an ideal"},
        {"oracle", "brute-force closure membership of a monomial"},
        {"roots", "Demazure roots of a cone in a box"},
        {"root-check", "whether a vector is a Demazure root"},
        {"toric-exp", "exponential of a toric action"},
        {"vertical-exists", "existence of vertical actions per ray"},
        {"vertical-exp", "exponential of a vertical action"},
        {"coloring-check", "validate a colored divisor and its cones"},
        {"assemblage-check", "validate a coherent assemblage and its kernel"},
        {"horizontal-check", "existence conditions for a horizontal action"},
        {"horizontal-exp", "exponential of a horizontal action in characteristic 0"},
        {"axiom-check", "iterative higher derivation axioms on sample elements"},
    };
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polyhedral divisors, ideals and additive group actions on complexity-one T-varieties"};
    app.require_subcommand(1, 1);

    tvar::cli::Options opts;
    bool json = false;
    std::string input;
    for (const auto& name : tvar::cli::command_names()) {
        CLI::App* sub = app.add_subcommand(name, summaries().at(name));
        sub->add_option("--input,-i", input, "problem file (JSON)")->required();
        sub->add_flag("--json", json, "machine-readable output");
        sub->add_option("--object", opts.object, "name of the object to use");
        sub->add_option("--elements", opts.elements, "name of the elements object to use");
        sub->add_option("--m", opts.m, "degree, comma-separated integers");
        sub->add_option("--box", opts.box, "lattice box, lo:hi or lo:hi,lo:hi,...");
        sub->add_option("--dmax", opts.dmax, "largest power tried by the oracle");
        sub->add_option("--power", opts.power, "power of the ideal");
        sub->add_option("--lambda", opts.lambda, "scalar for horizontal exponentials");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    opts.command = app.get_subcommands().front()->get_name();
    opts.input = input;

    tvar::cli::Outcome out;
    fs::path path = resolve_input(input);
    std::ifstream in(path);
    if (!in) {
        out.exit_code = 1;
        out.document = tvar::cli::detail::base_document(opts);
        out.document["error"] = {{"kind", "schema"}, {"name", "InputNotFound"}, {"message", "cannot read " + path.string()}};
    } else {
        std::stringstream ss;
        ss << in.rdbuf();
        out = tvar::cli::run_text(ss.str(), opts);
    }

    if (json) std::cout << tvar::io::canonical_text(out.document);
    else std::cout << tvar::cli::render_text(out.document);
    if (out.exit_code != 0) {
        const auto& err = out.document["error"];
        std::string name = err["name"].get<std::string>(), msg = err["message"].get<std::string>();
        if (msg.rfind(name + ":", 0) != 0) msg = name + ": " + msg;
        std::cerr << "polydiv: " << msg << "\n";
    }
    return out.exit_code;
}
