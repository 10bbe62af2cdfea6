#ifndef TVAR_CLI_HPP
#define TVAR_CLI_HPP

// Subcommand dispatch for the polydiv front end. Exit codes: 0 ok, 1 malformed input, 2 library error.

#include "io.hpp"

#include <fstream>
#include <sstream>

namespace tvar::cli {

using io::Problem;

struct Options {
    std::string command;
    std::string input;  // label echoed in the result
    std::optional<std::string> object;
    std::optional<std::string> elements;
    std::optional<std::string> m;
    std::optional<std::string> box;
    long dmax = 12;
    long power = 1;
    std::optional<std::string> lambda;
};

struct Outcome {
    int exit_code = 0;
    Json document;
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{
        "normalize",   "eval",         "degree",           "proper",           "sections",       "member",
        "generators",  "dpd",          "mono-closure",     "mono-normal",      "rees",           "closure-piece",
        "pair-check",  "normal-sufficient", "oracle",      "roots",            "root-check",     "toric-exp",
        "vertical-exists", "vertical-exp", "coloring-check", "assemblage-check", "horizontal-check",
        "horizontal-exp", "axiom-check"};
    return names;
}

namespace detail {

inline ZVec parse_degree(const std::string& text, std::size_t n, const char* flag) {
    ZVec v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            v.push_back(io::parse_int(Json(part), flag));
        } catch (const SchemaError&) {
            throw SchemaError(flag, "malformed integer '" + part + "'");
        }
    }
    if (v.size() != n) throw SchemaError(flag, "expected " + std::to_string(n) + " comma-separated integers");
    return v;
}

// "lo:hi" for every coordinate, or one "lo:hi" per coordinate separated by commas.
inline Box parse_box(const std::string& text, std::size_t n) {
    std::vector<std::pair<long, long>> ranges;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw SchemaError("--box", "expected lo:hi, got '" + part + "'");
        try {
            ranges.push_back({std::stol(part.substr(0, colon)), std::stol(part.substr(colon + 1))});
        } catch (const std::exception&) {
            throw SchemaError("--box", "malformed range '" + part + "'");
        }
    }
    if (ranges.size() == 1) ranges.resize(n, ranges[0]);
    if (ranges.size() != n) throw SchemaError("--box", "expected 1 or " + std::to_string(n) + " ranges");
    Box b;
    for (const auto& [lo, hi] : ranges) {
        if (lo > hi) throw SchemaError("--box", "empty range");
        b.lo.push_back(lo);
        b.hi.push_back(hi);
    }
    return b;
}

inline Json box_json(const Box& b) { return Json{{"lo", b.lo}, {"hi", b.hi}}; }

class Context {
public:
    Context(const Problem& p, const Options& o) : p_(p), o_(o) {}

    // The --object name if given (checked against the kinds), else the only object of those kinds.
    std::string pick(std::initializer_list<const char*> kinds) const {
        std::string wanted;
        for (const char* k : kinds) wanted += (wanted.empty() ? "" : " or ") + std::string(k);
        if (o_.object) {
            auto it = p_.objects.find(*o_.object);
            if (it == p_.objects.end()) throw SchemaError("--object", "no object named '" + *o_.object + "'");
            for (const char* k : kinds)
                if (std::string(io::kind_name(it->second)) == k) return *o_.object;
            throw SchemaError("--object", "'" + *o_.object + "' is not of kind " + wanted);
        }
        return unique(kinds, wanted, "--object");
    }

    std::vector<HomogeneousElement> elements(bool required = true) const {
        std::string name;
        if (o_.elements) {
            name = *o_.elements;
        } else {
            auto names = p_.names_of("elements");
            if (names.empty() && !required) return {};
            name = unique({"elements"}, "elements", "--elements");
        }
        return p_.get<io::ElementsObject>(name, "elements").items;
    }

    ZVec degree(std::size_t n) const {
        if (!o_.m) throw SchemaError("--m", "this command needs a degree");
        return parse_degree(*o_.m, n, "--m");
    }
    std::optional<ZVec> maybe_degree(std::size_t n) const {
        if (!o_.m) return std::nullopt;
        return parse_degree(*o_.m, n, "--m");
    }
    std::optional<Box> box(std::size_t n) const {
        if (!o_.box) return std::nullopt;
        return parse_box(*o_.box, n);
    }
    Rational lambda() const {
        if (!o_.lambda) return Rational(1);
        return io::parse_rational_json(Json(*o_.lambda), "--lambda");
    }
    // Inputs for exponential commands: the elements object, or 1*chi^m from --m.
    std::vector<HomogeneousElement> inputs(std::size_t n) const {
        if (o_.m) return {{RationalFunction(1), degree(n)}};
        return elements();
    }

    const Problem& problem() const { return p_; }
    const Options& options() const { return o_; }
    std::size_t rank() const { return p_.lattice_rank; }

private:
    std::string unique(std::initializer_list<const char*> kinds, const std::string& wanted, const char* flag) const {
        std::vector<std::string> names;
        for (const char* k : kinds)
            for (const auto& n : p_.names_of(k)) names.push_back(n);
        if (names.size() == 1) return names[0];
        if (names.empty()) throw SchemaError("objects", "no object of kind " + wanted);
        throw SchemaError("objects", "several objects of kind " + wanted + "; choose one with " + flag);
    }

    const Problem& p_;
    const Options& o_;
};

inline DemazureRoot root_of(const Cone& sigma, const ZVec& e) {
    auto r = is_demazure_root(sigma, e);
    if (!r) raise("InvalidRoot", to_string(e) + " is not a Demazure root of the cone");
    return *r;
}

inline RationalFunction default_phi(const PolyhedralDivisor& d, const DemazureRoot& root) {
    SectionModule s = vertical_phi(d, root);
    if (s.kind == SectionModule::Kind::FreeRankOne) return s.generator;
    if (s.kind == SectionModule::Kind::VectorSpace && !s.basis.empty()) return s.basis[0];
    raise("PhiNotAdmissible", "no nonzero section for the root " + to_string(root.vector));
}

struct Action {
    ExponentialMap map;
    Json info;
};

inline Action action_of(const Context& c, const std::string& name) {
    const Problem& p = c.problem();
    const io::Object& o = p.objects.at(name);
    if (auto* t = std::get_if<io::ToricActionObject>(&o)) {
        DemazureRoot r = root_of(t->cone, t->root);
        Cone sigma = t->cone;
        Rational lambda = t->lambda;
        return {[sigma, r, lambda](const HomogeneousElement& el) { return toric_exponential(sigma, r, lambda, el); },
                Json{{"type", "toric"}, {"root", io::zvec_json(r.vector)}, {"ray", io::zvec_json(r.ray)}}};
    }
    if (auto* v = std::get_if<io::VerticalActionObject>(&o)) {
        PolyhedralDivisor d = p.divisor(v->divisor);
        DemazureRoot r = root_of(d.tail(), v->root);
        RationalFunction phi = v->phi ? *v->phi : default_phi(d, r);
        return {[d, r, phi](const HomogeneousElement& el) { return vertical_exponential(d, r, phi, el); },
                Json{{"type", "vertical"}, {"root", io::zvec_json(r.vector)}, {"ray", io::zvec_json(r.ray)},
                     {"phi", io::function_json(phi)}}};
    }
    CoherentAssemblage ca = p.assemblage(name);
    Rational scale = c.lambda();
    return {[ca, scale](const HomogeneousElement& el) { return horizontal_exponential_char0(ca, scale, el); },
            Json{{"type", "horizontal"}, {"lambda_scale", io::rational_json(scale)}}};
}

inline Json expansions(const ExponentialMap& exp, const std::vector<HomogeneousElement>& inputs) {
    Json a = Json::array();
    for (const auto& el : inputs) a.push_back(Json{{"input", io::element_json(el)}, {"expansion", io::expansion_json(exp(el))}});
    return a;
}

inline Json coloring_json(const ColoredDivisor& cd) {
    Json cs = Json::array();
    for (const auto& [z, v] : cd.colors) cs.push_back(Json{{"point", io::point_json(z)}, {"vertex", io::qvec_json(v)}});
    Json j{{"base_point", io::point_json(cd.base_point)}, {"colors", cs}};
    j["infinity_point"] = cd.infinity_point ? io::point_json(*cd.infinity_point) : Json(nullptr);
    return j;
}

using Handler = std::function<Json(const Context&, Json& diagnostics)>;

inline const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = [] {
        std::map<std::string, Handler> h;
        h["normalize"] = [](const Context& c, Json& diag) {
            Normalization nz = divisor_from_generators(c.elements(), c.problem().curve);
            for (const auto& w : nz.warnings) diag["warnings"].push_back(w);
            return Json{{"sigma", io::cone_json(nz.sigma)}, {"weight_cone", io::cone_json(nz.sigma.dual())},
                        {"divisor", io::divisor_json(nz.divisor)}};
        };
        h["eval"] = [](const Context& c, Json&) {
            PolyhedralDivisor d = c.problem().divisor(c.pick({"divisor"}));
            ZVec m = c.degree(d.rank());
            QDivisor dm = evaluate(d, m);
            return Json{{"degree", io::zvec_json(m)}, {"divisor", io::qdivisor_json(dm)}, {"zero", dm.is_zero()}};
        };
        h["degree"] = [](const Context& c, Json&) {
            SigmaPolyhedron deg = degree_polyhedron(c.problem().divisor(c.pick({"divisor"})));
            Json j = io::polyhedron_json(deg);
            j["halfspaces"] = io::halfspaces_json(deg);
            return Json{{"degree_polyhedron", j}};
        };
        h["proper"] = [](const Context& c, Json&) {
            ProperReport r = is_proper(c.problem().divisor(c.pick({"divisor"})));
            return Json{{"proper", r.proper}, {"reason", r.reason}, {"witness", r.witness ? io::qvec_json(*r.witness) : Json(nullptr)}};
        };
        h["sections"] = [](const Context& c, Json&) {
            PolyhedralDivisor d = c.problem().divisor(c.pick({"divisor"}));
            ZVec m = c.degree(d.rank());
            QDivisor dm = evaluate(d, m);
            return Json{{"degree", io::zvec_json(m)}, {"divisor", io::qdivisor_json(dm)}, {"sections", io::sections_json(sections(dm))}};
        };
        h["member"] = [](const Context& c, Json&) {
            PolyhedralDivisor d = c.problem().divisor(c.pick({"divisor"}));
            Json a = Json::array();
            for (const auto& el : c.elements()) a.push_back(Json{{"element", io::element_json(el)}, {"member", member(el, d)}});
            return Json{{"results", a}};
        };
        h["generators"] = [](const Context& c, Json&) {
            PolyhedralDivisor d = c.problem().divisor(c.pick({"divisor"}));
            Box b = c.box(d.rank()).value_or(default_generator_box(d));
            GeneratorReport r = bounded_generators(d, b);
            return Json{{"box", box_json(b)},
                        {"generators", io::elements_json(r.generators)},
                        {"generated_in_box", r.generated_in_box},
                        {"saturated_in_double", r.saturated_in_double},
                        {"missing", io::zmat_json(r.missing)}};
        };
        h["dpd"] = [](const Context& c, Json&) {
            return Json{{"divisor", io::qdivisor_json(dpd_rank1(c.elements(), c.problem().curve))}};
        };
        h["mono-closure"] = [](const Context& c, Json&) {
            const auto& I = c.problem().get<io::MonomialIdealObject>(c.pick({"monomial_ideal"}), "monomial_ideal").ideal;
            return Json{{"generators", io::zmat_json(monomial_closure_generators(I))}};
        };
        h["mono-normal"] = [](const Context& c, Json&) {
            const auto& I = c.problem().get<io::MonomialIdealObject>(c.pick({"monomial_ideal"}), "monomial_ideal").ideal;
            MonomialNormality r = monomial_is_normal(I);
            return Json{{"normal", r.normal}, {"failing_power", r.failing_power},
                        {"witness", r.witness ? io::ivec_json(*r.witness) : Json(nullptr)}};
        };
        h["oracle"] = [](const Context& c, Json&) {
            const auto& I = c.problem().get<io::MonomialIdealObject>(c.pick({"monomial_ideal"}), "monomial_ideal").ideal;
            ZVec m = c.degree(I.rank());
            OracleResult r = closure_member_oracle(m, I, c.options().dmax);
            return Json{{"degree", io::zvec_json(m)}, {"d_max", c.options().dmax}, {"member", r.member}, {"power", r.power}};
        };
        h["rees"] = [](const Context& c, Json&) {
            ReesPair rp = rees_pair(c.problem().ideal(c.pick({"ideal"})));
            return Json{{"newton", io::polyhedron_json(rp.newton)}, {"rees_divisor", io::divisor_json(rp.rees_divisor)},
                        {"rees_weight_cone", io::cone_json(rp.rees_weight_cone())}};
        };
        h["closure-piece"] = [](const Context& c, Json&) {
            ReesPair rp = rees_pair(c.problem().ideal(c.pick({"ideal"})));
            ZVec m = c.degree(rp.rank());
            GradedPiece g = closure_power_piece(rp, m, c.options().power);
            return Json{{"degree", io::zvec_json(m)}, {"power", c.options().power}, {"sections", io::sections_json(g.module)}};
        };
        h["pair-check"] = [](const Context& c, Json&) {
            PairReport r = pair_conditions(rees_pair(c.problem().ideal(c.pick({"ideal"}))));
            return Json{{"conditions", io::conditions_json(r.conditions)}, {"all_pass", r.all_pass()}};
        };
        h["normal-sufficient"] = [](const Context& c, Json&) {
            SufficientReport r = normality_sufficient(rees_pair(c.problem().ideal(c.pick({"ideal"}))));
            return Json{{"normal", r.normal},
                        {"point", r.point ? io::point_json(*r.point) : Json(nullptr)},
                        {"failing_power", r.failing_power},
                        {"witness", r.witness ? io::ivec_json(*r.witness) : Json(nullptr)}};
        };
        h["roots"] = [](const Context& c, Json&) {
            const Cone& sigma = c.problem().get<io::ConeObject>(c.pick({"cone"}), "cone").cone;
            Box b = c.box(sigma.ambient_rank()).value_or(parse_box("-3:3", sigma.ambient_rank()));
            ZMat rays;
            if (auto rho = c.maybe_degree(sigma.ambient_rank())) rays.push_back(*rho);
            else rays = sigma.extreme_rays();
            Json a = Json::array();
            for (const auto& rho : rays)
                for (const auto& r : roots_with_ray(sigma, rho, b))
                    a.push_back(Json{{"vector", io::zvec_json(r.vector)}, {"ray", io::zvec_json(r.ray)}});
            return Json{{"box", box_json(b)}, {"roots", a}};
        };
        h["root-check"] = [](const Context& c, Json&) {
            const Cone& sigma = c.problem().get<io::ConeObject>(c.pick({"cone"}), "cone").cone;
            ZVec e = c.degree(sigma.ambient_rank());
            auto r = is_demazure_root(sigma, e);
            return Json{{"vector", io::zvec_json(e)}, {"root", r.has_value()}, {"ray", r ? io::zvec_json(r->ray) : Json(nullptr)}};
        };
        h["toric-exp"] = [](const Context& c, Json&) {
            Action a = action_of(c, c.pick({"toric_action"}));
            return Json{{"action", a.info}, {"expansions", expansions(a.map, c.inputs(c.rank()))}};
        };
        h["vertical-exists"] = [](const Context& c, Json&) {
            PolyhedralDivisor d = c.problem().divisor(c.pick({"divisor"}));
            ZMat rays;
            if (auto rho = c.maybe_degree(d.rank())) rays.push_back(*rho);
            else rays = d.tail().extreme_rays();
            Json a = Json::array();
            for (const auto& rho : rays) a.push_back(Json{{"ray", io::zvec_json(rho)}, {"exists", vertical_exists(d, rho)}});
            return Json{{"rays", a}};
        };
        h["vertical-exp"] = [](const Context& c, Json&) {
            Action a = action_of(c, c.pick({"vertical_action"}));
            return Json{{"action", a.info}, {"expansions", expansions(a.map, c.inputs(c.rank()))}};
        };
        h["coloring-check"] = [](const Context& c, Json&) {
            ColoredDivisor cd = c.problem().coloring(c.pick({"coloring"}));
            ColoringReport r = validate_coloring(cd);
            Json j{{"conditions", io::conditions_json(r.conditions)}, {"all_pass", r.all_pass()}, {"d", io::int_json(r.d)},
                   {"v_deg", io::qvec_json(r.v_deg)}, {"cones", nullptr}};
            if (r.all_pass()) {
                AssociatedCones ac = associated_cones(cd);
                j["cones"] = Json{{"omega_dual", io::cone_json(ac.omega_dual)}, {"omega", io::cone_json(ac.omega)},
                                  {"omega_tilde_dual", io::cone_json(ac.omega_tilde_dual)}};
            }
            return j;
        };
        h["assemblage-check"] = [](const Context& c, Json&) {
            CoherentAssemblage ca = c.problem().assemblage(c.pick({"assemblage"}));
            AssemblageReport r = assemblage_check(ca);
            Json us = Json::array();
            for (const auto& u : r.u) us.push_back(io::rational_json(u));
            Json j{{"conditions", io::conditions_json(r.conditions)}, {"all_pass", r.all_pass()}, {"u", us},
                   {"d", io::int_json(r.d)}, {"k", r.k}, {"rho_tilde", io::zvec_json(r.rho_tilde)}, {"kernel", nullptr}};
            if (r.all_pass()) {
                HorizontalKernel k = horizontal_kernel(ca);
                j["kernel"] = Json{{"lattice_basis", io::zmat_json(k.lattice_basis)}, {"generators", io::zmat_json(k.generators)},
                                   {"elements", io::elements_json(k.elements)}};
            }
            return j;
        };
        h["horizontal-check"] = [](const Context& c, Json& diag) {
            const auto& hp = c.problem().get<io::HorizontalProblemObject>(c.pick({"horizontal_problem"}), "horizontal_problem");
            HorizontalReport r = horizontal_conditions(c.problem().divisor(hp.divisor), hp.omega, hp.e, hp.p, hp.s1,
                                                       HorizontalOptions{hp.box});
            if (!r.normalization.empty()) diag["notes"].push_back(r.normalization);
            return Json{{"conditions", io::conditions_json(r.conditions)},
                        {"all_pass", r.all_pass()},
                        {"coloring", r.coloring ? coloring_json(*r.coloring) : Json(nullptr)},
                        {"samples", r.samples},
                        {"exhaustive", r.exhaustive}};
        };
        h["horizontal-exp"] = [](const Context& c, Json&) {
            Action a = action_of(c, c.pick({"assemblage"}));
            return Json{{"action", a.info}, {"expansions", expansions(a.map, c.inputs(c.rank()))}};
        };
        h["axiom-check"] = [](const Context& c, Json&) {
            Action a = action_of(c, c.pick({"toric_action", "vertical_action", "assemblage"}));
            std::vector<HomogeneousElement> els = c.elements();
            if (els.empty()) throw SchemaError("objects", "axiom-check needs at least one element");
            std::vector<std::pair<HomogeneousElement, HomogeneousElement>> samples;
            for (std::size_t i = 0; i < els.size(); ++i) samples.push_back({els[i], els[(i + 1) % els.size()]});
            return Json{{"action", a.info}, {"report", io::axiom_json(lfihd_axiom_check(a.map, samples))}};
        };
        return h;
    }();
    return table;
}

inline Json base_document(const Options& o) {
    Json opts = Json::object();
    if (o.object) opts["object"] = *o.object;
    if (o.elements) opts["elements"] = *o.elements;
    if (o.m) opts["m"] = *o.m;
    if (o.box) opts["box"] = *o.box;
    if (o.lambda) opts["lambda"] = *o.lambda;
    if (o.command == "oracle") opts["dmax"] = o.dmax;
    if (o.command == "closure-piece") opts["power"] = o.power;
    return Json{{"command", o.command}, {"input", o.input}, {"options", opts}};
}

}  // namespace detail

inline Outcome run(const Problem& p, const Options& o) {
    Json doc = detail::base_document(o);
    auto it = detail::handlers().find(o.command);
    if (it == detail::handlers().end()) {
        doc["error"] = Json{{"kind", "usage"}, {"name", "UnknownCommand"}, {"message", "unknown command '" + o.command + "'"}};
        return {1, doc};
    }
    Json diag{{"warnings", Json::array()}, {"notes", Json::array()}};
    try {
        doc["result"] = it->second(detail::Context(p, o), diag);
        doc["diagnostics"] = diag;
        return {0, doc};
    } catch (const SchemaError& e) {
        doc["error"] = Json{{"kind", "schema"}, {"name", "SchemaError"}, {"path", e.path()}, {"message", e.what()}};
        return {1, doc};
    } catch (const Error& e) {
        doc["error"] = Json{{"kind", "math"}, {"name", e.name()}, {"message", e.what()}};
        return {2, doc};
    }
}

inline Outcome run_text(const std::string& text, const Options& o) {
    try {
        return run(io::parse_problem_text(text), o);
    } catch (const SchemaError& e) {
        Json doc = detail::base_document(o);
        doc["error"] = Json{{"kind", "schema"}, {"name", "SchemaError"}, {"path", e.path()}, {"message", e.what()}};
        return {1, doc};
    } catch (const Error& e) {
        Json doc = detail::base_document(o);
        doc["error"] = Json{{"kind", "math"}, {"name", e.name()}, {"message", e.what()}};
        return {2, doc};
    }
}

// Rational-function literal as a formula, e.g. 2/3*(t - 1)^-2.
inline std::string function_text(const Json& f) {
    std::string s = f["constant"].get<std::string>();
    if (s == "1" && !f["factors"].empty()) s.clear();
    for (const auto& fac : f["factors"]) {
        std::string poly;
        const Json& c = fac["poly"];
        for (std::size_t k = c.size(); k-- > 0;) {
            std::string a = c[k].get<std::string>();
            if (a == "0") continue;
            bool neg = a[0] == '-';
            if (neg) a = a.substr(1);
            if (!poly.empty()) poly += neg ? " - " : " + ";
            else if (neg) poly += "-";
            if (k == 0 || a != "1") poly += a;
            if (k > 0) poly += std::string(k == 0 || a == "1" ? "" : "*") + "t" + (k > 1 ? "^" + std::to_string(k) : "");
        }
        s += (s.empty() ? "(" : "*(") + poly + ")";
        if (fac["exp"].get<long>() != 1) s += "^" + std::to_string(fac["exp"].get<long>());
    }
    return s;
}

inline bool is_function_json(const Json& j) {
    return j.is_object() && j.size() == 2 && j.contains("constant") && j.contains("factors");
}

// Plain-text rendering: one "path  value" line per scalar, short scalar arrays inline.
inline void render_lines(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
    auto scalar = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
    if (is_function_json(j)) {
        out.push_back({path, function_text(j)});
        return;
    }
    auto flat = [](const Json& a) {
        for (const auto& x : a)
            if (x.is_structured() && !(x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); })))
                return false;
        return true;
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_lines(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array() && flat(j)) {
        std::string s = "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) s += ", ";
            if (j[i].is_array()) {
                s += "(";
                for (std::size_t k = 0; k < j[i].size(); ++k) s += (k ? "," : "") + scalar(j[i][k]);
                s += ")";
            } else {
                s += scalar(j[i]);
            }
        }
        out.push_back({path, s + "]"});
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) render_lines(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out.push_back({path, scalar(j)});
    }
}

inline std::string render_text(const Json& doc) {
    std::vector<std::pair<std::string, std::string>> lines;
    render_lines(doc, "", lines);
    std::size_t w = 0;
    for (const auto& [k, v] : lines) w = std::max(w, k.size());
    std::string s;
    for (const auto& [k, v] : lines) s += k + std::string(w - k.size() + 2, ' ') + v + "\n";
    return s;
}

}  // namespace tvar::cli

#endif
