#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rfi/engine.hpp"
#include "rfi/linsys.hpp"
#include "rfi/parse.hpp"
#include "rfi/resolve.hpp"

using namespace rfi;

namespace {

enum Exit { Yes = 0, No = 1, Unknown = 2, InputError = 3 };

struct Options {
    int d_max = 30;
    int lambda_max = 60;
    int depth = 50;
    bool trace = false;
    bool machine = false;
};

Caps caps_of(const Options& o) {
    Caps c;
    c.d_max = o.d_max;
    c.lambda_max = o.lambda_max;
    if (o.trace)
        c.trace = &std::cerr;
    return c;
}

struct Job {
    FoliationInput fol;
    Configuration config;
};

Job load(const std::string& fol_path, const std::string& cfg_path) {
    Job j;
    try {
        j.fol = read_foliation(fol_path);
    } catch (const ParseError& e) {
        throw ParseError(fol_path + ": " + e.what());
    }
    try {
        j.config = read_configuration(cfg_path, j.fol.field);
    } catch (const ParseError& e) {
        throw ParseError(cfg_path + ": " + e.what());
    }
    return j;
}

void print_bool(const Options& o, const std::string& key, bool value) {
    if (o.machine)
        std::cout << key << " " << (value ? "true" : "false") << "\n";
    else
        std::cout << key << ": " << (value ? "yes" : "no") << "\n";
}

int report(const Options& o, const Verdict& v) {
    if (o.machine) {
        std::cout << "verdict " << to_string(v.outcome) << "\n";
        if (v.outcome == Outcome::Integral) {
            std::cout << "F " << to_string(v.F) << "\n";
            std::cout << "G " << to_string(v.G) << "\n";
        }
        std::cout << "reason " << v.reason << "\n";
        for (const auto& c : v.certificate)
            std::cout << "certificate " << c << "\n";
    } else {
        std::cout << to_string(v.outcome) << ": " << v.reason << "\n";
        if (v.outcome == Outcome::Integral)
            std::cout << "  F/G = (" << to_string(v.F) << ") / (" << to_string(v.G) << ")\n";
        for (const auto& c : v.certificate)
            std::cout << "  " << c << "\n";
    }
    switch (v.outcome) {
    case Outcome::Integral:
        return Yes;
    case Outcome::NoIntegral:
        return No;
    default:
        return Unknown;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational first integrals of plane foliations"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--dmax", o.d_max, "largest curve degree searched by algorithm 3")->check(CLI::PositiveNumber);
    app.add_option("--lmax", o.lambda_max, "largest multiple of T searched")->check(CLI::PositiveNumber);
    app.add_option("--depth", o.depth, "blow-up depth cap")->check(CLI::PositiveNumber);
    app.add_flag("--trace", o.trace, "log steps to stderr");
    app.add_flag("--machine", o.machine, "key-value output");
    app.fallthrough();

    std::string fol_path, cfg_path, f_text, g_text;
    int degree = 0;
    std::vector<long> hd;

    auto* resolve = app.add_subcommand("resolve", "print the dicritical configuration of a foliation");
    resolve->add_option("foliation", fol_path)->required();

    auto* decide = app.add_subcommand("decide", "decide whether a rational first integral exists");
    decide->add_option("foliation", fol_path)->required();
    decide->add_option("configuration", cfg_path)->required();

    auto* decide_degree = app.add_subcommand("decide-degree", "search for a first integral of one degree");
    decide_degree->add_option("d", degree)->required()->check(CLI::PositiveNumber);
    decide_degree->add_option("foliation", fol_path)->required();
    decide_degree->add_option("configuration", cfg_path)->required();

    auto* check = app.add_subcommand("check-integral", "test whether F/G is a first integral");
    check->add_option("F", f_text)->required();
    check->add_option("G", g_text)->required();
    check->add_option("foliation", fol_path)->required();

    auto* invariant = app.add_subcommand("invariant", "test whether G = 0 is invariant");
    invariant->add_option("G", g_text)->required();
    invariant->add_option("foliation", fol_path)->required();

    auto* psufficient = app.add_subcommand("psufficient", "test P-sufficiency of a configuration");
    psufficient->add_option("configuration", cfg_path)->required();

    auto* h0cmd = app.add_subcommand("h0", "dimension of the linear system d L - sum e_i E_i");
    h0cmd->add_option("configuration", cfg_path)->required();
    h0cmd->add_option("class", hd, "d e1 ... em")->required()->expected(1, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : InputError;
    }

    try {
        Caps caps = caps_of(o);
        if (*resolve) {
            auto fol = read_foliation(fol_path);
            try {
                std::cout << build_configuration(fol.omega, o.depth).to_text();
                return Yes;
            } catch (const FieldExtensionRequired& e) {
                if (o.machine)
                    std::cout << "verdict inconclusive\ncertificate " << e.certificate << "\n";
                else
                    std::cout << e.what() << "\n";
                return Unknown;
            }
        }
        if (*decide) {
            Job j = load(fol_path, cfg_path);
            return report(o, pipeline(j.fol.omega, j.config, caps));
        }
        if (*decide_degree) {
            Job j = load(fol_path, cfg_path);
            return report(o, checked(j.fol.omega, algorithm1(j.fol.omega, j.config, degree, caps)));
        }
        if (*check) {
            auto fol = read_foliation(fol_path);
            bool ok = is_first_integral(parse_form(f_text, fol.field), parse_form(g_text, fol.field), fol.omega);
            print_bool(o, "first-integral", ok);
            return ok ? Yes : No;
        }
        if (*invariant) {
            auto fol = read_foliation(fol_path);
            bool ok = is_invariant_curve(parse_form(g_text, fol.field), fol.omega);
            print_bool(o, "invariant", ok);
            return ok ? Yes : No;
        }
        if (*psufficient) {
            bool ok = is_p_sufficient(read_configuration(cfg_path));
            print_bool(o, "p-sufficient", ok);
            return ok ? Yes : No;
        }
        if (*h0cmd) {
            Configuration c = read_configuration(cfg_path);
            std::vector<long> e(hd.begin() + 1, hd.end());
            if (static_cast<int>(e.size()) != c.size())
                throw PreconditionError("expected " + std::to_string(c.size()) + " multiplicities, got " +
                                        std::to_string(e.size()));
            long h = h0(DivisorClass(hd[0], e), c);
            if (o.machine)
                std::cout << "h0 " << h << "\n";
            else
                std::cout << "h0 = " << h << "\n";
            return Yes;
        }
    } catch (const FieldExtensionRequired& e) {
        std::cerr << e.what() << "\n";
        return Unknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InputError;
    }
    return InputError;
}
