#ifndef TVAR_IO_HPP
#define TVAR_IO_HPP

// Canonical JSON for the library types and the problem-file format.
// Rationals are "p/q" strings, integers are JSON numbers, polynomials are ascending coefficient arrays.
// Objects serialize with sorted keys, so equal values give byte-identical text.

#include "gaaction.hpp"
#include "idealkit.hpp"

#include <nlohmann/json.hpp>

#include <variant>

namespace tvar {

using Json = nlohmann::json;

// Malformed input: carries the field path where it was detected.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& path, const std::string& message)
        : std::runtime_error((path.empty() ? std::string("<root>") : path) + ": " + message), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

namespace io {

inline std::string join_path(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
inline std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

inline void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    for (const char* k : required)
        if (!j.contains(k)) throw SchemaError(path, std::string("missing field '") + k + "'");
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* r : required) known = known || k == r;
        for (const char* o : optional) known = known || k == o;
        if (!known) throw SchemaError(join_path(path, k), "unknown field");
    }
}

inline const Json& array_at(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    return j;
}

// ---- scalars

inline Json int_json(const Int& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

inline Int parse_int(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<unsigned long>()) : Int(j.get<long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        bool ok = s.size() > start;
        for (std::size_t i = start; i < s.size(); ++i) ok = ok && s[i] >= '0' && s[i] <= '9';
        if (ok) return Int(s);
    }
    throw SchemaError(path, "expected an integer");
}

inline long parse_long(const Json& j, const std::string& path) {
    Int v = parse_int(j, path);
    if (!v.fits_slong_p()) throw SchemaError(path, "integer out of range");
    return v.get_si();
}

inline Json rational_json(const Rational& q) { return Json(q.get_str()); }

inline Rational parse_rational_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(parse_int(j, path));
    if (!j.is_string()) throw SchemaError(path, "expected a rational \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
}

inline Json zvec_json(const ZVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(int_json(x));
    return a;
}

inline ZVec parse_zvec(const Json& j, const std::string& path, std::optional<std::size_t> len = std::nullopt) {
    array_at(j, path);
    ZVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_int(j[i], index_path(path, i)));
    if (len && v.size() != *len)
        throw SchemaError(path, "expected length " + std::to_string(*len) + ", got " + std::to_string(v.size()));
    return v;
}

inline Json qvec_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

inline QVec parse_qvec(const Json& j, const std::string& path, std::optional<std::size_t> len = std::nullopt) {
    array_at(j, path);
    QVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_rational_json(j[i], index_path(path, i)));
    if (len && v.size() != *len)
        throw SchemaError(path, "expected length " + std::to_string(*len) + ", got " + std::to_string(v.size()));
    return v;
}

inline Json zmat_json(const ZMat& m) {
    Json a = Json::array();
    for (const auto& r : m) a.push_back(zvec_json(r));
    return a;
}

inline ZMat parse_zmat(const Json& j, const std::string& path, std::optional<std::size_t> len = std::nullopt) {
    array_at(j, path);
    ZMat m;
    for (std::size_t i = 0; i < j.size(); ++i) m.push_back(parse_zvec(j[i], index_path(path, i), len));
    return m;
}

inline Json ivec_json(const IVec& v) { return Json(v); }

// ---- curve objects

inline Json poly_json(const Poly& p) { return qvec_json(p.coeffs()); }

inline Poly parse_poly(const Json& j, const std::string& path) {
    Poly p(parse_qvec(j, path));
    if (p.is_zero()) throw SchemaError(path, "zero polynomial");
    return p;
}

inline Json point_json(const BasePoint& z) {
    if (z.is_infinity()) return Json("inf");
    if (z.is_prime_point()) return Json{{"prime", int_json(z.prime())}};
    if (auto a = z.root()) return Json{{"at", rational_json(*a)}};
    return Json{{"poly", poly_json(z.poly())}};
}

inline BasePoint parse_point(const Json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return BasePoint::infinity();
        throw SchemaError(path, "expected \"inf\" or a point object");
    }
    if (!j.is_object() || j.size() != 1) throw SchemaError(path, "a point is \"inf\", {at}, {poly} or {prime}");
    try {
        if (j.contains("at")) return BasePoint::at(parse_rational_json(j["at"], join_path(path, "at")));
        if (j.contains("poly")) return BasePoint::finite(parse_poly(j["poly"], join_path(path, "poly")));
        if (j.contains("prime")) return BasePoint::prime(parse_int(j["prime"], join_path(path, "prime")));
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
    throw SchemaError(join_path(path, j.begin().key()), "unknown field");
}

inline Json function_json(const RationalFunction& f) {
    Json fs = Json::array();
    for (const auto& [p, e] : f.factors()) fs.push_back(Json{{"poly", poly_json(p)}, {"exp", e}});
    return Json{{"constant", rational_json(f.constant())}, {"factors", fs}};
}

// {constant, factors: [{poly, exp} | {prime, exp}]}; prime factors fold into the constant.
inline RationalFunction parse_function(const Json& j, const std::string& path) {
    check_keys(j, path, {}, {"constant", "factors"});
    Rational c = j.contains("constant") ? parse_rational_json(j["constant"], join_path(path, "constant")) : Rational(1);
    if (c == 0) throw SchemaError(join_path(path, "constant"), "rational functions must be nonzero");
    std::vector<std::pair<Poly, long>> fs;
    if (j.contains("factors")) {
        const std::string fp = join_path(path, "factors");
        const Json& arr = array_at(j["factors"], fp);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ip = index_path(fp, i);
            const Json& f = arr[i];
            if (!f.is_object()) throw SchemaError(ip, "expected an object");
            long e = f.contains("exp") ? parse_long(f["exp"], join_path(ip, "exp")) : 1;
            if (f.contains("prime")) {
                check_keys(f, ip, {"prime"}, {"exp"});
                Int p = parse_int(f["prime"], join_path(ip, "prime"));
                if (!is_prime(p)) throw SchemaError(join_path(ip, "prime"), p.get_str() + " is not prime");
                c *= e >= 0 ? Rational(ipow(p, static_cast<unsigned long>(e))) : make_rational(Int(1), ipow(p, static_cast<unsigned long>(-e)));
            } else {
                check_keys(f, ip, {"poly"}, {"exp"});
                fs.push_back({parse_poly(f["poly"], join_path(ip, "poly")), e});
            }
        }
    }
    return RationalFunction::from_factors(c, fs);
}

inline Json qdivisor_json(const QDivisor& d) {
    Json a = Json::array();
    for (const auto& [z, c] : d.coefficients()) a.push_back(Json{{"point", point_json(z)}, {"coefficient", rational_json(c)}});
    return a;
}

// ---- cones, polyhedra, divisors

inline Json cone_json(const Cone& c) { return Json{{"rays", zmat_json(c.rays())}}; }

inline Cone parse_cone(const Json& j, const std::string& path, std::size_t n) {
    if (j.is_object() && j.contains("halfspaces")) {
        check_keys(j, path, {"halfspaces"});
        return Cone::from_halfspaces(n, parse_zmat(j["halfspaces"], join_path(path, "halfspaces"), n));
    }
    check_keys(j, path, {"rays"});
    return Cone::from_rays(n, parse_zmat(j["rays"], join_path(path, "rays"), n));
}

inline Json polyhedron_json(const SigmaPolyhedron& p) {
    Json vs = Json::array();
    for (const auto& v : p.vertices()) vs.push_back(qvec_json(v));
    return Json{{"vertices", vs}, {"tail_rays", zmat_json(p.tail().rays())}};
}

inline Json halfspaces_json(const SigmaPolyhedron& p) {
    Json hs = Json::array();
    for (const auto& h : p.halfspaces()) hs.push_back(Json{{"normal", zvec_json(h.normal)}, {"offset", rational_json(h.offset)}});
    return hs;
}

// Either {vertices[, tail_rays]} or {halfspaces: [{normal, offset}]}, with the given tail.
inline SigmaPolyhedron parse_polyhedron(const Json& j, const std::string& path, const Cone& tail) {
    std::size_t n = tail.ambient_rank();
    if (j.is_object() && j.contains("halfspaces")) {
        check_keys(j, path, {"halfspaces"}, {"point"});
        const std::string hp = join_path(path, "halfspaces");
        const Json& arr = array_at(j["halfspaces"], hp);
        std::vector<Halfspace> hs;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ip = index_path(hp, i);
            check_keys(arr[i], ip, {"normal", "offset"});
            hs.push_back({parse_zvec(arr[i]["normal"], join_path(ip, "normal"), n), parse_rational_json(arr[i]["offset"], join_path(ip, "offset"))});
        }
        return polyhedron_from_halfspaces(n, hs, tail);
    }
    check_keys(j, path, {"vertices"}, {"tail_rays", "point"});
    if (j.contains("tail_rays")) {
        Cone given = Cone::from_rays(n, parse_zmat(j["tail_rays"], join_path(path, "tail_rays"), n));
        if (given != tail) throw SchemaError(join_path(path, "tail_rays"), "differs from the divisor tail");
    }
    const std::string vp = join_path(path, "vertices");
    const Json& arr = array_at(j["vertices"], vp);
    std::vector<QVec> vs;
    for (std::size_t i = 0; i < arr.size(); ++i) vs.push_back(parse_qvec(arr[i], index_path(vp, i), n));
    return SigmaPolyhedron::from_vertices(n, vs, tail);
}

inline Json divisor_json(const PolyhedralDivisor& d) {
    Json cs = Json::array();
    for (const auto& [z, p] : d.coefficients()) {
        Json c = polyhedron_json(p);
        c["point"] = point_json(z);
        cs.push_back(c);
    }
    return Json{{"curve", curve_name(d.curve())}, {"tail", cone_json(d.tail())}, {"coefficients", cs}};
}

inline CurveKind parse_curve_json(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a curve name");
    try {
        return parse_curve(j.get<std::string>());
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
}

inline PolyhedralDivisor parse_divisor(const Json& j, const std::string& path, std::optional<CurveKind> curve,
                                       std::optional<std::size_t> rank) {
    check_keys(j, path, {"tail"}, {"curve", "coefficients", "kind"});
    CurveKind c = CurveKind::AffineLine;
    if (j.contains("curve")) {
        c = parse_curve_json(j["curve"], join_path(path, "curve"));
        if (curve && *curve != c) throw SchemaError(join_path(path, "curve"), "differs from the problem curve");
    } else if (curve) {
        c = *curve;
    } else {
        throw SchemaError(path, "missing field 'curve'");
    }
    const Json& tj = j["tail"];
    std::size_t n = 0;
    if (rank) n = *rank;
    else if (tj.is_object() && tj.contains("rays") && tj["rays"].is_array() && !tj["rays"].empty() && tj["rays"][0].is_array())
        n = tj["rays"][0].size();
    else throw SchemaError(join_path(path, "tail"), "cannot infer the lattice rank");
    Cone tail = parse_cone(tj, join_path(path, "tail"), n);
    PolyhedralDivisor d(c, tail);
    if (j.contains("coefficients")) {
        const std::string cp = join_path(path, "coefficients");
        const Json& arr = array_at(j["coefficients"], cp);
        std::set<BasePoint> seen;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ip = index_path(cp, i);
            if (!arr[i].is_object() || !arr[i].contains("point")) throw SchemaError(ip, "missing field 'point'");
            BasePoint z = parse_point(arr[i]["point"], join_path(ip, "point"));
            if (!seen.insert(z).second) throw SchemaError(join_path(ip, "point"), "point " + z.str() + " listed twice");
            if (!z.lies_on(c)) throw SchemaError(join_path(ip, "point"), "point " + z.str() + " is not on " + curve_name(c));
            d.set(z, parse_polyhedron(arr[i], ip, tail));
        }
    }
    return d;
}

inline Json element_json(const HomogeneousElement& el) {
    return Json{{"function", function_json(el.function)}, {"degree", zvec_json(el.degree)}};
}

inline HomogeneousElement parse_element(const Json& j, const std::string& path, std::optional<std::size_t> rank) {
    check_keys(j, path, {"degree"}, {"function"});
    RationalFunction f = j.contains("function") ? parse_function(j["function"], join_path(path, "function")) : RationalFunction(1);
    return {f, parse_zvec(j["degree"], join_path(path, "degree"), rank)};
}

inline std::vector<HomogeneousElement> parse_elements(const Json& j, const std::string& path, std::optional<std::size_t> rank) {
    array_at(j, path);
    std::vector<HomogeneousElement> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_element(j[i], index_path(path, i), rank));
    return out;
}

inline Json elements_json(const std::vector<HomogeneousElement>& els) {
    Json a = Json::array();
    for (const auto& e : els) a.push_back(element_json(e));
    return a;
}

inline Json graded_json(const GradedElement& g) {
    Json a = Json::array();
    for (const auto& [m, f] : g.terms()) {
        RationalFunction rf = RationalFunction::from_dense(f);
        a.push_back(Json{{"degree", zvec_json(m)}, {"function", function_json(rf)}});
    }
    return a;
}

// ---- problem files

struct DivisorObject { PolyhedralDivisor divisor; };
struct ElementsObject { std::vector<HomogeneousElement> items; };
struct IdealObject { std::string divisor; std::vector<HomogeneousElement> generators; };
struct MonomialIdealObject { MonomialIdeal ideal; };
struct ConeObject { Cone cone; };
struct ToricActionObject { Cone cone; ZVec root; Rational lambda{1}; };
struct VerticalActionObject { std::string divisor; ZVec root; std::optional<RationalFunction> phi; };
struct ColoringObject {
    std::string divisor;
    BasePoint base_point;
    std::optional<BasePoint> infinity_point;
    std::map<BasePoint, QVec> colors;
};
struct AssemblageObject { std::string coloring; ZVec e; std::vector<long> s{0}; std::vector<Rational> lambda{Rational(1)}; long p = 1; };
struct HorizontalProblemObject { std::string divisor; Cone omega; ZVec e; long p = 1; long s1 = 0; long box = 0; };

using Object = std::variant<DivisorObject, ElementsObject, IdealObject, MonomialIdealObject, ConeObject, ToricActionObject,
                            VerticalActionObject, ColoringObject, AssemblageObject, HorizontalProblemObject>;

inline const char* kind_name(const Object& o) {
    static const char* names[] = {"divisor",        "elements", "ideal",     "monomial_ideal", "cone",
                                  "toric_action",   "vertical_action", "coloring", "assemblage", "horizontal_problem"};
    return names[o.index()];
}

struct Problem {
    std::string version = "1";
    CurveKind curve = CurveKind::AffineLine;
    std::size_t lattice_rank = 0;
    std::optional<std::string> description;
    std::map<std::string, Object> objects;

    template <class T>
    const T& get(const std::string& name, const char* kind) const {
        auto it = objects.find(name);
        if (it == objects.end()) throw SchemaError("objects", "no object named '" + name + "'");
        const T* p = std::get_if<T>(&it->second);
        if (!p) throw SchemaError(join_path("objects", name), std::string("expected an object of kind ") + kind);
        return *p;
    }

    // Names of objects with the given kind, in sorted order.
    std::vector<std::string> names_of(const std::string& kind) const {
        std::vector<std::string> out;
        for (const auto& [name, o] : objects)
            if (kind == kind_name(o)) out.push_back(name);
        return out;
    }

    PolyhedralDivisor divisor(const std::string& name) const { return get<DivisorObject>(name, "divisor").divisor; }

    ColoredDivisor coloring(const std::string& name) const {
        const auto& c = get<ColoringObject>(name, "coloring");
        return {divisor(c.divisor), c.base_point, c.infinity_point, c.colors};
    }

    CoherentAssemblage assemblage(const std::string& name) const {
        const auto& a = get<AssemblageObject>(name, "assemblage");
        return {coloring(a.coloring), a.e, a.s, a.lambda, a.p};
    }

    GradedIdealPresentation ideal(const std::string& name) const {
        const auto& i = get<IdealObject>(name, "ideal");
        return {divisor(i.divisor), i.generators};
    }
};

inline std::string parse_name(const Json& j, const std::string& path) {
    if (!j.is_string() || j.get<std::string>().empty()) throw SchemaError(path, "expected an object name");
    return j.get<std::string>();
}

inline std::vector<long> parse_longs(const Json& j, const std::string& path) {
    array_at(j, path);
    std::vector<long> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_long(j[i], index_path(path, i)));
    return out;
}

inline Object parse_object(const Json& j, const std::string& path, CurveKind curve, std::size_t n) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw SchemaError(path, "missing field 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    auto sub = [&](const char* k) { return join_path(path, k); };
    if (kind == "divisor") return DivisorObject{parse_divisor(j, path, curve, n)};
    if (kind == "elements") {
        check_keys(j, path, {"kind", "items"});
        return ElementsObject{parse_elements(j["items"], sub("items"), n)};
    }
    if (kind == "ideal") {
        check_keys(j, path, {"kind", "divisor", "generators"});
        return IdealObject{parse_name(j["divisor"], sub("divisor")), parse_elements(j["generators"], sub("generators"), n)};
    }
    if (kind == "monomial_ideal") {
        // exponent lattices may be larger than the problem lattice, so the rank is read off the data
        check_keys(j, path, {"kind", "exponents"}, {"weight_cone"});
        ZMat exps = parse_zmat(j["exponents"], sub("exponents"));
        if (exps.empty()) throw SchemaError(sub("exponents"), "needs at least one exponent");
        std::size_t r = exps[0].size();
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i].size() != r) throw SchemaError(index_path(sub("exponents"), i), "exponents have different lengths");
        Cone w = j.contains("weight_cone") ? parse_cone(j["weight_cone"], sub("weight_cone"), r) : Cone::orthant(r);
        return MonomialIdealObject{MonomialIdeal{w, exps}};
    }
    if (kind == "cone") {
        check_keys(j, path, {"kind", "rays"});
        return ConeObject{Cone::from_rays(n, parse_zmat(j["rays"], sub("rays"), n))};
    }
    if (kind == "toric_action") {
        check_keys(j, path, {"kind", "cone", "root"}, {"lambda"});
        ToricActionObject o{parse_cone(j["cone"], sub("cone"), n), parse_zvec(j["root"], sub("root"), n), Rational(1)};
        if (j.contains("lambda")) o.lambda = parse_rational_json(j["lambda"], sub("lambda"));
        return o;
    }
    if (kind == "vertical_action") {
        check_keys(j, path, {"kind", "divisor", "root"}, {"phi"});
        VerticalActionObject o{parse_name(j["divisor"], sub("divisor")), parse_zvec(j["root"], sub("root"), n), std::nullopt};
        if (j.contains("phi")) o.phi = parse_function(j["phi"], sub("phi"));
        return o;
    }
    if (kind == "coloring") {
        check_keys(j, path, {"kind", "divisor", "base_point", "colors"}, {"infinity_point"});
        ColoringObject o{parse_name(j["divisor"], sub("divisor")), parse_point(j["base_point"], sub("base_point")), std::nullopt, {}};
        if (j.contains("infinity_point")) o.infinity_point = parse_point(j["infinity_point"], sub("infinity_point"));
        const Json& arr = array_at(j["colors"], sub("colors"));
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ip = index_path(sub("colors"), i);
            check_keys(arr[i], ip, {"point", "vertex"});
            BasePoint z = parse_point(arr[i]["point"], join_path(ip, "point"));
            if (!o.colors.emplace(z, parse_qvec(arr[i]["vertex"], join_path(ip, "vertex"), n)).second)
                throw SchemaError(join_path(ip, "point"), "point " + z.str() + " colored twice");
        }
        return o;
    }
    if (kind == "assemblage") {
        check_keys(j, path, {"kind", "coloring", "e"}, {"s", "lambda", "p"});
        AssemblageObject o{parse_name(j["coloring"], sub("coloring")), parse_zvec(j["e"], sub("e"), n)};
        if (j.contains("s")) o.s = parse_longs(j["s"], sub("s"));
        if (j.contains("lambda")) {
            o.lambda.clear();
            const Json& arr = array_at(j["lambda"], sub("lambda"));
            for (std::size_t i = 0; i < arr.size(); ++i) o.lambda.push_back(parse_rational_json(arr[i], index_path(sub("lambda"), i)));
        }
        if (j.contains("p")) o.p = parse_long(j["p"], sub("p"));
        return o;
    }
    if (kind == "horizontal_problem") {
        check_keys(j, path, {"kind", "divisor", "omega", "e"}, {"p", "s1", "box"});
        HorizontalProblemObject o{parse_name(j["divisor"], sub("divisor")), parse_cone(j["omega"], sub("omega"), n),
                                  parse_zvec(j["e"], sub("e"), n)};
        if (j.contains("p")) o.p = parse_long(j["p"], sub("p"));
        if (j.contains("s1")) o.s1 = parse_long(j["s1"], sub("s1"));
        if (j.contains("box")) o.box = parse_long(j["box"], sub("box"));
        return o;
    }
    throw SchemaError(join_path(path, "kind"), "unknown object kind '" + kind + "'");
}

inline Json object_json(const Object& o) {
    Json j;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, DivisorObject>) {
                j = divisor_json(x.divisor);
            } else if constexpr (std::is_same_v<T, ElementsObject>) {
                j = Json{{"items", elements_json(x.items)}};
            } else if constexpr (std::is_same_v<T, IdealObject>) {
                j = Json{{"divisor", x.divisor}, {"generators", elements_json(x.generators)}};
            } else if constexpr (std::is_same_v<T, MonomialIdealObject>) {
                j = Json{{"weight_cone", cone_json(x.ideal.weight_cone)}, {"exponents", zmat_json(x.ideal.exponents)}};
            } else if constexpr (std::is_same_v<T, ConeObject>) {
                j = cone_json(x.cone);
            } else if constexpr (std::is_same_v<T, ToricActionObject>) {
                j = Json{{"cone", cone_json(x.cone)}, {"root", zvec_json(x.root)}, {"lambda", rational_json(x.lambda)}};
            } else if constexpr (std::is_same_v<T, VerticalActionObject>) {
                j = Json{{"divisor", x.divisor}, {"root", zvec_json(x.root)}};
                if (x.phi) j["phi"] = function_json(*x.phi);
            } else if constexpr (std::is_same_v<T, ColoringObject>) {
                Json cs = Json::array();
                for (const auto& [z, v] : x.colors) cs.push_back(Json{{"point", point_json(z)}, {"vertex", qvec_json(v)}});
                j = Json{{"divisor", x.divisor}, {"base_point", point_json(x.base_point)}, {"colors", cs}};
                if (x.infinity_point) j["infinity_point"] = point_json(*x.infinity_point);
            } else if constexpr (std::is_same_v<T, AssemblageObject>) {
                Json ls = Json::array();
                for (const auto& l : x.lambda) ls.push_back(rational_json(l));
                j = Json{{"coloring", x.coloring}, {"e", zvec_json(x.e)}, {"s", x.s}, {"lambda", ls}, {"p", x.p}};
            } else {
                j = Json{{"divisor", x.divisor}, {"omega", cone_json(x.omega)}, {"e", zvec_json(x.e)},
                         {"p", x.p}, {"s1", x.s1}, {"box", x.box}};
            }
        },
        o);
    j["kind"] = kind_name(o);
    return j;
}

inline void check_references(const Problem& p) {
    for (const auto& [name, o] : p.objects) {
        const std::string path = join_path("objects", name);
        auto need = [&](const std::string& ref, const char* kind, const char* field) {
            auto it = p.objects.find(ref);
            if (it == p.objects.end()) throw SchemaError(join_path(path, field), "no object named '" + ref + "'");
            if (std::string(kind_name(it->second)) != kind)
                throw SchemaError(join_path(path, field), "'" + ref + "' is not of kind " + kind);
        };
        if (auto* x = std::get_if<IdealObject>(&o)) need(x->divisor, "divisor", "divisor");
        if (auto* x = std::get_if<VerticalActionObject>(&o)) need(x->divisor, "divisor", "divisor");
        if (auto* x = std::get_if<ColoringObject>(&o)) need(x->divisor, "divisor", "divisor");
        if (auto* x = std::get_if<AssemblageObject>(&o)) need(x->coloring, "coloring", "coloring");
        if (auto* x = std::get_if<HorizontalProblemObject>(&o)) need(x->divisor, "divisor", "divisor");
    }
}

// Structural validation happens here; library preconditions (properness, roots, ...) are left to the commands.
// Library errors raised while building objects (e.g. an empty polyhedron) propagate as tvar::Error.
inline Problem parse_problem(const Json& j) {
    check_keys(j, "", {"version", "curve", "lattice_rank", "objects"}, {"description"});
    Problem p;
    if (!j["version"].is_string() || j["version"].get<std::string>() != "1")
        throw SchemaError("version", "unsupported version (expected \"1\")");
    p.curve = parse_curve_json(j["curve"], "curve");
    long n = parse_long(j["lattice_rank"], "lattice_rank");
    if (n < 1) throw SchemaError("lattice_rank", "must be positive");
    p.lattice_rank = static_cast<std::size_t>(n);
    if (j.contains("description")) {
        if (!j["description"].is_string()) throw SchemaError("description", "expected a string");
        p.description = j["description"].get<std::string>();
    }
    if (!j["objects"].is_object()) throw SchemaError("objects", "expected an object");
    for (const auto& [name, oj] : j["objects"].items())
        p.objects.emplace(name, parse_object(oj, join_path("objects", name), p.curve, p.lattice_rank));
    check_references(p);
    return p;
}

inline Problem parse_problem_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", e.what());
    }
    return parse_problem(j);
}

inline Json problem_json(const Problem& p) {
    Json objs = Json::object();
    for (const auto& [name, o] : p.objects) objs[name] = object_json(o);
    Json j{{"version", p.version}, {"curve", curve_name(p.curve)}, {"lattice_rank", p.lattice_rank}, {"objects", objs}};
    if (p.description) j["description"] = *p.description;
    return j;
}

inline std::string canonical_text(const Json& j) { return j.dump(2) + "\n"; }

// ---- results

inline Json conditions_json(const std::vector<ConditionResult>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) a.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    return a;
}

inline Json sections_json(const SectionModule& s) {
    switch (s.kind) {
        case SectionModule::Kind::Zero: return Json{{"kind", "zero"}};
        case SectionModule::Kind::FreeRankOne: return Json{{"kind", "free_rank_one"}, {"generator", function_json(s.generator)}};
        case SectionModule::Kind::VectorSpace: {
            Json b = Json::array();
            for (const auto& f : s.basis) b.push_back(function_json(f));
            return Json{{"kind", "vector_space"}, {"dimension", s.basis.size()}, {"basis", b}};
        }
    }
    return Json();
}

inline Json expansion_json(const ExponentialExpansion& x) {
    Json ts = Json::array();
    for (const auto& t : x.terms) ts.push_back(Json{{"x_power", t.x_power}, {"element", element_json(t.element)}});
    return Json{{"terms", ts}, {"notes", x.notes}};
}

inline Json axiom_json(const AxiomReport& r) {
    return Json{{"identity", r.identity},       {"leibniz", r.leibniz},           {"finiteness", r.finiteness},
                {"iterativity", r.iterativity}, {"homomorphism", r.homomorphism}, {"samples", r.samples},
                {"witness", r.witness},         {"all_pass", r.all_pass()}};
}

}  // namespace io
}  // namespace tvar

#endif
