// padic-perron command-line front end: parse matrices and field configs,
// dispatch pipeline commands, emit text or JSON reports.
//
// Exit codes: 0 completed analysis (including "hypothesis not satisfied" --
// that is a finding, not an error); 2 input errors; 3 internal certification
// or precision failures.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perron/json_io.hpp"
#include "perron/padic_perron.hpp"

namespace {

struct Opts {
    std::string field = "p-adic";
    std::vector<long long> primes;
    int precision = 64;
    std::string input_path;
    std::string matrix_inline;
    std::string poly;
    std::string format = "text";
    int max_squarings = 64;
    std::uint64_t seed = 42;
    int trials = 100;
    int dim = 6;
    std::string l_policy = "minimal-plus-one";
};

std::string load_matrix_text(const Opts& o) {
    if (!o.input_path.empty() && !o.matrix_inline.empty())
        throw perron::InputError("give either --input or --matrix, not both");
    if (!o.matrix_inline.empty()) return o.matrix_inline;
    if (o.input_path.empty())
        throw perron::InputError("a matrix is required: use --input <path> or --matrix <json>");
    std::ifstream in(o.input_path);
    if (!in) throw perron::InputError("cannot open input file '" + o.input_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long long single_prime(const Opts& o) {
    if (o.primes.size() != 1)
        throw perron::InputError("exactly one --p <prime> is required for this command");
    return o.primes[0];
}

void validate(const Opts& o) {
    if (o.precision < 8)
        throw perron::InputError("precision must be >= 8");
    if (o.field != "p-adic" && o.field != "laurent")
        throw perron::InputError("--field must be 'p-adic' or 'laurent'");
    if (o.format != "text" && o.format != "json")
        throw perron::InputError("--format must be 'text' or 'json'");
    if (o.max_squarings < 1)
        throw perron::InputError("--max-squarings must be >= 1");
}

perron::LPolicy parse_policy(const std::string& s) {
    if (s == "minimal") return perron::LPolicy::minimal;
    if (s == "minimal-plus-one") return perron::LPolicy::minimal_plus_one;
    if (s == "random-in-range") return perron::LPolicy::random_in_range;
    throw perron::InputError("--l-policy must be minimal, minimal-plus-one, or random-in-range");
}

void emit(const perron::ordered_json& j, const std::string& text, const Opts& o) {
    if (o.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

template <class F>
perron::CharPoly<typename F::Exact> parse_poly_arg(const std::string& s, const F& field) {
    std::vector<typename F::Exact> coeffs;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, ',')) coeffs.push_back(field.parse_exact(cur));
    if (coeffs.size() < 2)
        throw perron::InputError("--poly needs ascending coefficients \"c0,c1,...,1\"");
    if (!(coeffs.back() == field.exact_from_int(1)))
        throw perron::InputError("--poly must be monic (last coefficient 1)");
    coeffs.pop_back();
    return perron::CharPoly<typename F::Exact>{static_cast<int>(coeffs.size()),
                                               std::move(coeffs)};
}

template <class F>
int run_matrix_command(const std::string& cmd, const Opts& o) {
    using namespace perron;
    F field(single_prime(o), o.precision);

    if (cmd == "polygon" && !o.poly.empty()) {
        const auto f = parse_poly_arg(o.poly, field);
        const auto pg = newton_polygon(f, field);
        std::string text = "newton polygon:";
        for (const auto& s : pg.segments)
            text += " slope " + rational_str(s.slope) + " length " + std::to_string(s.length) + ";";
        text += "\n";
        emit(polygon_json(pg), text, o);
        return 0;
    }

    const auto a = parse_matrix_text(load_matrix_text(o), field);

    if (cmd == "charpoly") {
        const auto f = char_poly(a, field);
        ordered_json coeffs = ordered_json::array();
        std::string text = "charpoly coefficients (ascending, monic): [";
        for (std::size_t i = 0; i < f.c.size(); ++i) {
            coeffs.push_back(field.exact_str(f.c[i]));
            if (i) text += ", ";
            text += field.exact_str(f.c[i]);
        }
        text += "]\n";
        emit(ordered_json{{"n", f.n}, {"coefficients", std::move(coeffs)}}, text, o);
        return 0;
    }
    if (cmd == "polygon") {
        const auto f = char_poly(a, field);
        const auto pg = newton_polygon(f, field);
        std::string text = "newton polygon:";
        for (const auto& s : pg.segments)
            text += " slope " + rational_str(s.slope) + " length " + std::to_string(s.length) + ";";
        text += "\n";
        emit(polygon_json(pg), text, o);
        return 0;
    }

    AnalyzeOptions opt;
    opt.max_squarings = o.max_squarings;
    opt.compute_projection = cmd != "eigen";
    const auto rep = analyze(a, field, opt);
    emit(report_json(rep, field), report_text(rep, field), o);
    return 0;
}

int dispatch(const std::string& cmd, const Opts& o) {
    if (o.field == "laurent") return run_matrix_command<perron::LaurentField>(cmd, o);
    return run_matrix_command<perron::PadicField>(cmd, o);
}

} // namespace

int main(int argc, char** argv) {
    using namespace perron;
    CLI::App app{"exact dominant-eigenpair analysis over Q_p and F_p((t))"};
    app.require_subcommand(1);

    Opts o;
    const char* matrix_cmds[] = {"analyze", "charpoly", "polygon", "eigen", "project"};
    std::vector<CLI::App*> subs;
    for (const char* name : matrix_cmds) {
        CLI::App* sub = app.add_subcommand(name, "");
        sub->add_option("--field", o.field, "p-adic | laurent");
        sub->add_option("--p", o.primes, "residue characteristic (prime)");
        sub->add_option("--precision", o.precision, "working precision (>= 8, default 64)")
            ->envname("PADIC_PERRON_PRECISION");
        sub->add_option("--input", o.input_path, "path to matrix JSON");
        sub->add_option("--matrix", o.matrix_inline, "inline matrix JSON");
        sub->add_option("--format", o.format, "text | json");
        sub->add_option("--max-squarings", o.max_squarings, "projection iteration cap");
        if (std::string(name) == "polygon")
            sub->add_option("--poly", o.poly, "monic polynomial, ascending coefficients c0,c1,...,1");
        subs.push_back(sub);
    }

    CLI::App* cx = app.add_subcommand("counterexample", "verify the sharpness family at l = 2 ord_p(n)");
    cx->add_option("--p", o.primes, "prime p with p | n")->required();
    cx->add_option("--n", o.dim, "dimension n")->required();
    cx->add_option("--precision", o.precision, "working precision")
        ->envname("PADIC_PERRON_PRECISION");
    cx->add_option("--format", o.format, "text | json");

    CLI::App* cam = app.add_subcommand("campaign", "randomized bound-certificate and eigenpair verification battery");
    cam->add_option("--p", o.primes, "primes (repeatable)")->required();
    cam->add_option("--n", o.dim, "maximum dimension");
    cam->add_option("--trials", o.trials, "trials per (p, n) cell");
    cam->add_option("--seed", o.seed, "base seed");
    cam->add_option("--l-policy", o.l_policy, "minimal | minimal-plus-one | random-in-range");
    cam->add_option("--field", o.field, "p-adic | laurent");
    cam->add_option("--precision", o.precision, "working precision")
        ->envname("PADIC_PERRON_PRECISION");
    cam->add_option("--format", o.format, "text | json");
    cam->add_option("--max-squarings", o.max_squarings, "projection iteration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        validate(o);
        if (cx->parsed()) {
            if (o.field != "p-adic")
                throw InputError("the counterexample family is defined over Q_p only");
            const auto rep = verify_counterexample(single_prime(o), o.dim, o.precision);
            emit(counterexample_json(rep), counterexample_text(rep), o);
            return rep.all_pass ? 0 : 3;
        }
        if (cam->parsed()) {
            CampaignConfig cfg;
            cfg.primes = o.primes;
            cfg.max_dim = o.dim;
            cfg.trials = o.trials;
            cfg.seed = o.seed;
            cfg.l_policy = parse_policy(o.l_policy);
            cfg.kind = o.field == "laurent" ? FieldKind::laurent : FieldKind::padic;
            cfg.precision = o.precision;
            cfg.max_squarings = o.max_squarings;
            const auto rep = run_campaign(cfg);
            emit(campaign_json(rep), campaign_text(rep), o);
            return rep.failures.empty() ? 0 : 3;
        }
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) return dispatch(matrix_cmds[i], o);
        throw InputError("no command given");
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return 3;
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
