#include <symmetroid/cli.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace symmetroid;

    RunConfig cfg;
    cfg.workers = default_workers();

    CLI::App app{"symmetroid: Brauer classes and weak approximation for pencils of quadrics in P^4"};
    app.require_subcommand(1);

    std::uint64_t prime = 0, cutoff = 0, samples = 0;
    unsigned dmax = 0;
    long height = 0;
    bool json_flag = false;

    // Every subcommand shares one flag set; dispatch() ignores what it does not use.
    auto add_common = [&](CLI::App* sub, bool takes_pencil) {
        if (takes_pencil)
            sub->add_option("pencil", cfg.input, "pencil file: five quadrics, one per line")->check(CLI::ExistingFile);
        sub->add_option("--place", cfg.places, "place(s): inf, a prime, or a field such as F4 or Q");
        sub->add_option("--prime,--p", prime, "single prime");
        sub->add_option("--cutoff", cutoff, "prime cutoff M");
        sub->add_option("--dmax", dmax, "degree cap for Nullstellensatz tests");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--samples", samples, "Monte Carlo sample count");
        sub->add_option("--height", height, "Monte Carlo coefficient height N");
        sub->add_option("--workers", cfg.workers, "worker threads (default: SYMMETROID_WORKERS or 1)")
            ->check(CLI::Range(1u, 1024u));
        sub->add_option("--strategy", cfg.strategy, "real | finite(p)");
        sub->add_option("--t", cfg.t, "member parameter t0,...,t4 (rationals)");
        sub->add_option("--v", cfg.v, "kernel vector v0,...,v4 (x-point)");
        sub->add_option("--quadric", cfg.quadric, "classify this form instead of a pencil member");
        sub->add_option("--method", cfg.method, "sp-scan method: auto | kernel | exhaustive");
        sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
        sub->add_flag("--json", json_flag, "compact JSON (default)");
        sub->add_flag("--pretty", cfg.pretty, "indented JSON");
        sub->add_flag("--verbose", cfg.verbosity, "progress on stderr");
    };

    struct Sub
    {
        const char* name;
        const char* help;
        bool pencil;
    };
    const Sub subs[] = {
        {"classify", "classify a quadric (or pencil member) over Q, R, Q_p or F_q", true},
        {"alpha-symbol", "explicit quaternion symbol for the Brauer class", true},
        {"evaluate", "local invariants at the Y-points over a member", true},
        {"certify-wa", "certificate that weak approximation fails", true},
        {"regularity", "mod-p certificate that the threefold X is smooth", true},
        {"v3-test", "all-primes certificate that the pencil avoids V_3", true},
        {"sp-scan", "membership in the bad sets S_p", true},
        {"density-bound", "certified lower bound for the density product", false},
        {"monte-carlo", "sampled pass fraction against the density product", false},
        {"census", "count the bad configurations over F_2 or F_3", false},
        {"x-point", "point of X from a singular member and its kernel vector", true},
    };
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        add_common(sub, s.pencil);
        if (s.pencil)
            sub->get_option("pencil")->required(std::string(s.name) != "classify");
    }

    CLI11_PARSE(app, argc, argv);

    cfg.subcommand = app.get_subcommands().front()->get_name();
    auto* sub = app.get_subcommands().front();
    if (sub->count("--prime"))
        cfg.prime = prime;
    if (sub->count("--cutoff"))
        cfg.cutoff = cutoff;
    if (sub->count("--dmax"))
        cfg.dmax = dmax;
    if (sub->count("--samples"))
        cfg.samples = samples;
    if (sub->count("--height"))
        cfg.height = height;
    if (json_flag)
        cfg.pretty = false;

    auto result = dispatch(cfg);
    std::string text = cfg.pretty ? result.report.dump(2) : result.report.dump();
    if (cfg.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(cfg.out);
        if (!out) {
            std::cerr << "cannot write '" << cfg.out << "'\n";
            return 1;
        }
        out << text << "\n";
    }
    if (result.exit_code == 1 && result.report["result"].contains("error"))
        std::cerr << result.report["result"]["error"].get<std::string>() << "\n";
    return result.exit_code;
}
