#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "perron/counterexample.hpp"
#include "perron/perron.hpp"
#include "perron/render.hpp"

namespace perron {

using ordered_json = nlohmann::ordered_json;

inline ordered_json val_json(Valuation v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

inline ordered_json opt_val_json(const std::optional<Valuation>& v) {
    if (!v) return nullptr;
    return val_json(*v);
}

template <class Ops>
ordered_json elem_json(const Element<Ops>& e) {
    ordered_json j;
    if (e.is_zero()) {
        j["unit"] = "0";
        j["val"] = "inf";
        j["precision"] = e.zero_bound();
    } else {
        j["unit"] = Ops::unit_str(e.context(), e.unit());
        j["val"] = e.val();
        j["precision"] = e.rel_precision();
    }
    return j;
}

// Matrix input format (shared with the CLI): {"n": int, "entries":
// [[string]]}, row-major, entries per the field's exact-scalar grammar.
template <class F>
ExactMatrix<F> parse_matrix(const ordered_json& j, const F& field) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw InputError("matrix JSON must be an object with \"n\" and \"entries\"");
    if (!j["n"].is_number_integer())
        throw InputError("matrix \"n\" must be an integer");
    const long long n = j["n"].get<long long>();
    if (n < 1 || n > 64) throw InputError("matrix dimension out of range [1, 64]");
    const auto& rows = j["entries"];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
        throw InputError("matrix \"entries\" must have exactly n rows");
    std::vector<typename F::Exact> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
            throw InputError("ragged matrix: every row must have exactly n entries");
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw InputError("matrix entries must be strings");
            entries.push_back(field.parse_exact(cell.get<std::string>()));
        }
    }
    return ExactMatrix<F>::from_entries(static_cast<int>(n), std::move(entries));
}

template <class F>
ExactMatrix<F> parse_matrix_text(const std::string& text, const F& field) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed matrix JSON: ") + e.what());
    }
    return parse_matrix(j, field);
}

template <class F>
ordered_json matrix_json(const ExactMatrix<F>& a, const F& field) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < a.dim(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < a.dim(); ++j) row.push_back(field.exact_str(a.at(i, j)));
        rows.push_back(std::move(row));
    }
    return ordered_json{{"n", a.dim()}, {"entries", std::move(rows)}};
}

inline ordered_json polygon_json(const NewtonPolygon& pg) {
    ordered_json points = ordered_json::array();
    for (const auto& p : pg.points) points.push_back(ordered_json::array({p.x, p.y}));
    ordered_json vertices = ordered_json::array();
    for (const auto& p : pg.vertices) vertices.push_back(ordered_json::array({p.x, p.y}));
    ordered_json segments = ordered_json::array();
    for (const auto& s : pg.segments)
        segments.push_back(ordered_json{{"slope", rational_str(s.slope)}, {"length", s.length}});
    return ordered_json{
        {"points", std::move(points)}, {"vertices", std::move(vertices)}, {"segments", std::move(segments)}};
}

inline ordered_json root_valuations_json(const std::vector<std::pair<Rational, int>>& rv) {
    ordered_json out = ordered_json::array();
    for (const auto& [v, c] : rv)
        out.push_back(ordered_json{{"valuation", rational_str(v)}, {"count", c}});
    return out;
}

inline ordered_json certificates_json(const std::vector<BoundCertificate>& certs) {
    ordered_json out = ordered_json::array();
    for (const auto& c : certs)
        out.push_back(ordered_json{{"claim", c.claim},
                                   {"required", val_json(c.required)},
                                   {"observed", val_json(c.observed)},
                                   {"holds", c.holds}});
    return out;
}

inline ordered_json hypothesis_json(const HypothesisReport& h) {
    return ordered_json{{"ell", opt_val_json(h.ell)},
                        {"ord_n", val_json(h.ord_n)},
                        {"satisfied", h.satisfied},
                        {"margin", opt_val_json(h.margin)}};
}

inline ordered_json strict_max_json(const StrictMax& sm) {
    ordered_json j{{"certified", sm.certified}, {"mode", sm.mode}};
    if (sm.certified) j["root_valuation"] = sm.root_valuation;
    j["line_check"] = sm.line_check ? ordered_json(*sm.line_check) : ordered_json(nullptr);
    j["explanation"] = sm.explanation;
    return j;
}

template <class F>
std::optional<std::string> lambda_guess(const typename F::Elem& lambda) {
    if constexpr (F::ops_type::kind == FieldKind::padic) {
        const auto g = reconstruct_rational(lambda, BigInt(kDefaultGuessHeight));
        if (g) return rational_str(*g);
        return std::nullopt;
    } else {
        const auto g =
            reconstruct_ratfunc(lambda, std::max(0, (lambda.rel_precision() - 1) / 2));
        if (g) return g->str();
        return std::nullopt;
    }
}

template <class F>
ordered_json report_json(const PerronReport<F>& rep, const F& field) {
    ordered_json j;
    j["field"] = ordered_json{{"kind", kind_name(rep.ctx.kind())},
                              {"p", rep.ctx.residue_char()},
                              {"precision", rep.ctx.working_precision()},
                              {"uniformizer", rep.ctx.uniformizer_symbol()}};
    j["input"] = matrix_json(rep.input, field);
    if (rep.rescale) {
        j["rescale"] = ordered_json{{"alpha", field.exact_str(rep.rescale->alpha)},
                                    {"ord_alpha", val_json(rep.rescale->ord_alpha)},
                                    {"entry_radius", val_json(rep.rescale->entry_radius)}};
        j["analyzed"] = matrix_json(rep.analyzed, field);
    } else {
        j["rescale"] = nullptr;
    }
    j["hypothesis"] = hypothesis_json(rep.hypothesis);
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : rep.charpoly.c) coeffs.push_back(field.exact_str(c));
    j["charpoly"] = std::move(coeffs);
    j["polygon"] = polygon_json(rep.polygon);
    j["root_valuations"] = root_valuations_json(rep.root_vals);
    j["strict_max"] = strict_max_json(rep.strict_max);

    if (rep.eigenvalue && rep.lambda_input) {
        ordered_json lj = elem_json(*rep.lambda_input);
        lj["disc_certified"] = rep.eigenvalue->disc_certified;
        lj["valuation"] = rep.eigenvalue->valuation;
        lj["residual_ord"] = rep.eigenvalue->residual_bound;
        lj["iterations"] = rep.eigenvalue->iterations;
        const auto guess = lambda_guess<F>(*rep.lambda_input);
        lj["rational_guess"] = guess ? ordered_json(*guess) : ordered_json(nullptr);
        if (rep.rescale) lj["unit_disc_lambda"] = elem_json(rep.eigenvalue->lambda);
        j["lambda_max"] = std::move(lj);
    } else {
        j["lambda_max"] = nullptr;
    }

    if (rep.eigenvector) {
        ordered_json xs = ordered_json::array();
        for (const auto& xi : rep.eigenvector->x) xs.push_back(elem_json(xi));
        j["eigenvector"] = std::move(xs);
        j["eigenvector_info"] =
            ordered_json{{"v_sum", elem_json(rep.eigenvector->v_sum)},
                         {"factor", elem_json(rep.eigenvector->factor)},
                         {"trace_normalized", rep.eigenvector->trace_normalized},
                         {"disc_certified", rep.eigenvector->disc_certified},
                         {"residual_ord", rep.eigenvector->residual_bound}};
    } else {
        j["eigenvector"] = nullptr;
        j["eigenvector_info"] = nullptr;
    }

    if (rep.projection) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < rep.projection->P.dim(); ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < rep.projection->P.dim(); ++k)
                row.push_back(elem_json(rep.projection->P.at(i, k)));
            rows.push_back(std::move(row));
        }
        j["projection"] =
            ordered_json{{"entries", std::move(rows)},
                         {"iterations", rep.projection->iterations},
                         {"certified_precision", rep.projection->certified_abs},
                         {"diagnostics",
                          ordered_json{{"idempotent_defect_ord", rep.projection->idem_bound},
                                       {"eigen_defect_ord", rep.projection->eigen_bound},
                                       {"trace_defect_ord", rep.projection->trace_bound},
                                       {"trace", elem_json(rep.projection->trace)}}}};
    } else {
        j["projection"] = nullptr;
    }

    j["certificates"] = certificates_json(rep.certificates);
    j["finding"] = rep.finding;
    return j;
}

template <class F>
std::string report_text(const PerronReport<F>& rep, const F& field) {
    std::string out;
    out += "field: " + std::string(kind_name(rep.ctx.kind())) + ", p = " +
           std::to_string(rep.ctx.residue_char()) + ", precision " +
           std::to_string(rep.ctx.working_precision()) + "\n";
    if (rep.rescale)
        out += "rescaled by alpha = " + field.exact_str(rep.rescale->alpha) +
               " (ord " + rep.rescale->ord_alpha.str() + ")\n";
    out += "hypothesis: l = " + (rep.hypothesis.ell ? rep.hypothesis.ell->str() : "none") +
           ", ord(n) = " + rep.hypothesis.ord_n.str() +
           (rep.hypothesis.satisfied ? ", satisfied" : ", NOT satisfied") +
           (rep.hypothesis.margin ? " (margin " + rep.hypothesis.margin->str() + ")" : "") + "\n";
    out += "charpoly coefficients (ascending, monic): [";
    for (std::size_t i = 0; i < rep.charpoly.c.size(); ++i) {
        if (i) out += ", ";
        out += field.exact_str(rep.charpoly.c[i]);
    }
    out += "]\n";
    out += "newton polygon:";
    for (const auto& s : rep.polygon.segments)
        out += " slope " + rational_str(s.slope) + " length " + std::to_string(s.length) + ";";
    out += "\nroot valuations:";
    for (const auto& [v, c] : rep.root_vals)
        out += " (" + rational_str(v) + " x" + std::to_string(c) + ")";
    out += "\nstrict max: " + std::string(rep.strict_max.certified ? "certified" : "not certified") +
           " [" + rep.strict_max.mode + "] " + rep.strict_max.explanation + "\n";
    for (const auto& c : rep.certificates)
        out += "certificate " + c.claim + ": required " + c.required.str() + ", observed " +
               c.observed.str() + (c.holds ? " -- holds" : " -- FAILS") + "\n";
    if (rep.lambda_input) {
        out += "lambda_max = " + render(*rep.lambda_input, RenderStyle::digits) + "\n";
        out += "lambda_max (unit, val, prec) = " + render(*rep.lambda_input, RenderStyle::unit_val) +
               "\n";
        out += "lambda_max rational guess: " +
               render(*rep.lambda_input, RenderStyle::rational_guess) + "\n";
        out += "lambda residual ord >= " + std::to_string(rep.eigenvalue->residual_bound) +
               ", disc certified: " + (rep.eigenvalue->disc_certified ? "yes" : "no") + "\n";
    }
    if (rep.eigenvector) {
        out += "eigenvector:\n";
        for (const auto& xi : rep.eigenvector->x)
            out += "  " + render(xi, RenderStyle::unit_val) + "\n";
        out += "eigenvector disc certified: " +
               std::string(rep.eigenvector->disc_certified ? "yes" : "no") + "\n";
    }
    if (rep.projection) {
        out += "projection P (" + std::to_string(rep.projection->iterations) + " squarings, " +
               "certified precision " + std::to_string(rep.projection->certified_abs) + "):\n";
        for (int i = 0; i < rep.projection->P.dim(); ++i) {
            out += " ";
            for (int k = 0; k < rep.projection->P.dim(); ++k)
                out += " " + render(rep.projection->P.at(i, k), RenderStyle::unit_val);
            out += "\n";
        }
        out += "diagnostics: ord(P^2-P) >= " + std::to_string(rep.projection->idem_bound) +
               ", ord(AP-lambda P) >= " + std::to_string(rep.projection->eigen_bound) +
               ", ord(tr P - 1) >= " + std::to_string(rep.projection->trace_bound) + "\n";
    }
    out += "finding: " + rep.finding + "\n";
    return out;
}

inline ordered_json counterexample_json(const CounterexampleReport& rep) {
    const PadicField field(rep.spec.p, 32);
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks)
        checks.push_back(ordered_json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : rep.charpoly.c) coeffs.push_back(rational_str(c));
    return ordered_json{{"p", rep.spec.p},
                        {"n", rep.spec.n},
                        {"ell", rep.spec.ell},
                        {"matrix", matrix_json(rep.matrix, field)},
                        {"charpoly", std::move(coeffs)},
                        {"checks", std::move(checks)},
                        {"all_pass", rep.all_pass}};
}

inline std::string counterexample_text(const CounterexampleReport& rep) {
    std::string out = "counterexample family: p = " + std::to_string(rep.spec.p) +
                      ", n = " + std::to_string(rep.spec.n) +
                      ", l = 2 ord_p(n) = " + std::to_string(rep.spec.ell) + "\n";
    for (const auto& c : rep.checks)
        out += "  " + c.name + ": " + (c.pass ? "pass" : "FAIL") + " (" + c.detail + ")\n";
    out += rep.all_pass ? "all checks pass\n" : "CHECKS FAILED\n";
    return out;
}

inline ordered_json campaign_json(const CampaignReport& rep) {
    ordered_json primes = ordered_json::array();
    for (long long p : rep.config.primes) primes.push_back(p);
    ordered_json failures = ordered_json::array();
    for (const auto& f : rep.failures) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < f.dim; ++i) {
            ordered_json row = ordered_json::array();
            for (int j = 0; j < f.dim; ++j)
                row.push_back(f.entries[static_cast<std::size_t>(i) * f.dim + j]);
            rows.push_back(std::move(row));
        }
        failures.push_back(ordered_json{
            {"seed", f.seed},
            {"p", f.p},
            {"n", f.n},
            {"ell", f.ell},
            {"matrix", ordered_json{{"n", f.dim}, {"entries", std::move(rows)}}},
            {"failed_check", f.failed_check},
            {"message", f.message}});
    }
    return ordered_json{{"config", ordered_json{{"primes", std::move(primes)},
                                                {"max_dim", rep.config.max_dim},
                                                {"trials", rep.config.trials},
                                                {"seed", rep.config.seed},
                                                {"l_policy", l_policy_name(rep.config.l_policy)},
                                                {"field", kind_name(rep.config.kind)},
                                                {"precision", rep.config.precision},
                                                {"max_squarings", rep.config.max_squarings}}},
                        {"passes", rep.passes},
                        {"total", rep.total},
                        {"failures", std::move(failures)}};
}

inline std::string campaign_text(const CampaignReport& rep) {
    std::string out = "campaign: " + std::to_string(rep.passes) + "/" +
                      std::to_string(rep.total) + " trials passed\n";
    for (const auto& f : rep.failures)
        out += "  FAIL p=" + std::to_string(f.p) + " n=" + std::to_string(f.n) +
               " seed=" + std::to_string(f.seed) + " check=" + f.failed_check + " (" + f.message +
               ")\n";
    return out;
}

} // namespace perron
