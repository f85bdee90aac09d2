#include "hurwitz/io.hpp"

#include "hurwitz/error.hpp"
#include "hurwitz/expr.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hurwitz {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw Error(ErrorCode::ParseError, (path.empty() ? "/" : path) + ": " + what);
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

const json& need(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing key '") + key + "'");
    return *it;
}

int as_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const std::string& path)
{
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

Rational as_rational(const json& j, const std::string& path)
{
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) fail(path, "expected a rational \"num/den\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

template <class F>
auto with_path(const std::string& path, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError && std::string(e.what()).rfind("ParseError: /", 0) == 0) throw;
        fail(path, e.what());
    }
}

Elem elem_from_json(const json& j, const FieldPtr& f, const std::string& path)
{
    if (j.is_number_integer()) return f->from_int(j.get<long long>());
    if (j.is_string()) return with_path(path, [&] { return parse_element(f, j.get<std::string>()); });
    if (!j.is_array()) fail(path, "expected a coefficient array");
    std::vector<int> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(as_int(j[i], path + "/" + std::to_string(i)));
    return with_path(path, [&] { return f->from_coeffs(c); });
}

ojson elem_to_json(const FieldPtr& f, Elem a)
{
    ojson arr = ojson::array();
    for (int c : f->coeffs(a)) arr.push_back(c);
    return arr;
}

Poly poly_from_json(const json& j, const FieldPtr& f, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected an array of coefficients");
    std::vector<Elem> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(elem_from_json(j[i], f, path + "/" + std::to_string(i)));
    return Poly(f, c);
}

ojson poly_to_json(const Poly& p)
{
    ojson arr = ojson::array();
    for (Elem c : p.coeffs()) arr.push_back(elem_to_json(p.field(), c));
    return arr;
}

RatFunc ratfunc_from_json(const json& j, const FieldPtr& f, const std::string& path)
{
    if (j.is_string()) return with_path(path, [&] { return parse_expression(f, j.get<std::string>()); });
    const Poly num = poly_from_json(need(j, "num", path), f, path + "/num");
    const Poly den = poly_from_json(need(j, "den", path), f, path + "/den");
    if (den.is_zero()) fail(path + "/den", "zero denominator");
    return RatFunc(num, den);
}

ojson ratfunc_to_json(const RatFunc& r)
{
    ojson o;
    o["num"] = poly_to_json(r.num());
    o["den"] = poly_to_json(r.den());
    return o;
}

FieldPtr field_from_json(const json& j, const std::string& path)
{
    const int p = as_int(need(j, "p", path), path + "/p");
    std::vector<int> m;
    if (j.contains("modulus")) {
        const json& mj = j["modulus"];
        if (!mj.is_array()) fail(path + "/modulus", "expected an array");
        for (std::size_t i = 0; i < mj.size(); ++i) m.push_back(as_int(mj[i], path + "/modulus/" + std::to_string(i)));
    } else {
        m = {0, 1};
    }
    if (j.contains("d") && as_int(j["d"], path + "/d") != static_cast<int>(m.size()) - 1)
        fail(path + "/d", "degree differs from the modulus degree");
    return with_path(path, [&] { return Field::make(p, m); });
}

ojson field_to_json(const FieldPtr& f)
{
    ojson o;
    o["p"] = f->p();
    o["d"] = f->degree();
    o["modulus"] = f->modulus();
    return o;
}

ReductionType rt_from_json(const json& j, const FieldPtr& f, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected an array of entries");
    const bool text_mode = !j.empty() && j[0].is_string();
    ReductionType rt{f, {}};
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string sub = path + "/" + std::to_string(i);
        if (text_mode) {
            const RatFunc r = with_path(sub, [&] { return parse_expression(f, as_string(j[i], sub)); });
            const ReductionType one = with_path(sub, [&] { return reduction_type_from_functions(f, {r}); });
            rt.entries.push_back(one.entries.front());
        } else {
            rt.entries.push_back(poly_from_json(j[i], f, sub));
        }
    }
    return rt;
}

ojson rt_to_json(const ReductionType& rt)
{
    ojson arr = ojson::array();
    for (const Poly& e : rt.entries) arr.push_back(poly_to_json(e));
    return arr;
}

std::string entry_text(const FieldPtr& f, const Poly& u)
{
    std::string out;
    for (int j = u.is_zero() ? -1 : u.deg(); j >= 0; --j) {
        const Elem c = u.coeff(j);
        if (c.code == 0) continue;
        std::string coeff = f->to_string(c);
        if (f->degree() > 1 && coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
        if (!out.empty()) out += "+";
        if (j == 0) out += coeff;
        else out += coeff + "/x" + (j > 1 ? "^" + std::to_string(j) : "");
    }
    return out.empty() ? "0" : out;
}

bool is_flat(const ojson& j)
{
    if (!j.is_array()) return !j.is_object();
    return std::all_of(j.begin(), j.end(), [](const ojson& e) {
        return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const ojson& x) { return x.is_primitive(); }));
    });
}

// Pretty printer that keeps coefficient arrays on one line.
void dump_into(const ojson& j, int indent, std::string& out)
{
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        const bool small = std::all_of(j.begin(), j.end(), [](const ojson& v) {
            return is_flat(v) || (v.is_object() && std::all_of(v.begin(), v.end(), [](const ojson& x) { return is_flat(x); }));
        });
        if (small) {
            std::string line = "{";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                line += ojson(it.key()).dump() + ": ";
                dump_into(it.value(), indent + 2, line);
                if (i + 1 < j.size()) line += ", ";
            }
            line += "}";
            if (line.size() + static_cast<std::size_t>(indent) <= 100 && line.find('\n') == std::string::npos) {
                out += line;
                return;
            }
        }
        out += "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            out += pad + ojson(it.key()).dump() + ": ";
            dump_into(it.value(), indent + 2, out);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + "}";
    } else if (j.is_array() && !is_flat(j)) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            dump_into(j[i], indent + 2, out);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + "]";
    } else {
        std::string flat = j.dump();
        std::string spaced;
        for (char ch : flat) {
            spaced += ch;
            if (ch == ',') spaced += ' ';
        }
        out += j.is_string() ? flat : spaced;
    }
}

std::string dump(const ojson& j)
{
    std::string out;
    dump_into(j, 0, out);
    return out + "\n";
}

ojson report_to_json(const ValidationReport& r)
{
    ojson o;
    o["valid"] = r.ok();
    ojson arr = ojson::array();
    for (const auto& v : r.violations) {
        ojson e;
        e["clause"] = v.clause;
        e["subject"] = v.subject;
        e["message"] = v.message;
        arr.push_back(e);
    }
    o["violations"] = arr;
    return o;
}

RationalPlace place_from_json(const json& j, const std::string& path)
{
    return {as_string(need(j, "edge", path), path + "/edge"), as_rational(need(j, "r", path), path + "/r")};
}

ojson place_to_json(const RationalPlace& pl)
{
    ojson o;
    o["edge"] = pl.edge;
    o["r"] = to_string(pl.r);
    return o;
}

}  // namespace

FieldPtr parse_field_spec(std::string_view text)
{
    const std::string s(text);
    const auto colon = s.find(':');
    try {
        const int p = std::stoi(s.substr(0, colon));
        if (colon == std::string::npos) return Field::prime(p);
        std::vector<int> m;
        std::stringstream ss(s.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) m.push_back(std::stoi(item));
        return Field::make(p, m);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "bad field spec '" + s + "'; expected p or p:m0,...,md");
    }
}

HurwitzTree parse_tree(std::string_view text)
{
    const json j = parse_json(text);
    HurwitzTree t;
    t.p = as_int(need(j, "p", ""), "/p");
    t.n = as_int(need(j, "n", ""), "/n");
    t.field = j.contains("field") ? field_from_json(j["field"], "/field") : with_path("/p", [&] { return Field::prime(t.p); });
    if (t.field->p() != t.p) fail("/field/p", "differs from /p");
    const FieldPtr& F = t.field;

    const json& root = need(j, "root", "");
    t.root = as_string(need(root, "id", "/root"), "/root/id");
    if (root.contains("reduction_type")) t.reduction_type = rt_from_json(root["reduction_type"], F, "/root/reduction_type");
    if (j.contains("root_radius")) t.root_radius = as_rational(j["root_radius"], "/root_radius");

    const json& vs = need(j, "vertices", "");
    if (!vs.is_array()) fail("/vertices", "expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string path = "/vertices/" + std::to_string(i);
        const json& vj = vs[i];
        Vertex v;
        v.id = as_string(need(vj, "id", path), path + "/id");
        v.depth = as_rational(need(vj, "depth", path), path + "/depth");
        if (vj.contains("omega_dx") && !vj["omega_dx"].is_null())
            v.omega = DifferentialForm(ratfunc_from_json(vj["omega_dx"], F, path + "/omega_dx"));
        v.monodromy = as_int(need(vj, "monodromy_exponent", path), path + "/monodromy_exponent");
        if (vj.contains("chart")) {
            const json& cj = vj["chart"];
            if (!cj.is_array()) fail(path + "/chart", "expected an array");
            for (std::size_t k = 0; k < cj.size(); ++k) {
                const std::string cp = path + "/chart/" + std::to_string(k);
                v.chart.push_back({as_string(need(cj[k], "child", cp), cp + "/child"),
                                   elem_from_json(need(cj[k], "point", cp), F, cp + "/point")});
            }
        }
        t.vertices.push_back(std::move(v));
    }
    if (root.contains("omega_dx")) {
        Vertex* rv = t.find_vertex(t.root);
        if (rv && !rv->omega) rv->omega = DifferentialForm(ratfunc_from_json(root["omega_dx"], F, "/root/omega_dx"));
    }

    const json& es = need(j, "edges", "");
    if (!es.is_array()) fail("/edges", "expected an array");
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string path = "/edges/" + std::to_string(i);
        const json& ej = es[i];
        Edge e;
        e.id = as_string(need(ej, "id", path), path + "/id");
        e.source = as_string(need(ej, "source", path), path + "/source");
        e.target = as_string(need(ej, "target", path), path + "/target");
        e.thickness = as_rational(need(ej, "thickness", path), path + "/thickness");
        e.slope = as_int(need(ej, "slope", path), path + "/slope");
        t.edges.push_back(std::move(e));
    }

    const json& ls = need(j, "leaves", "");
    if (!ls.is_array()) fail("/leaves", "expected an array");
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const std::string path = "/leaves/" + std::to_string(i);
        const json& lj = ls[i];
        Leaf b;
        b.id = as_string(need(lj, "id", path), path + "/id");
        b.conductor = as_int(need(lj, "conductor", path), path + "/conductor");
        b.index = as_int(need(lj, "index", path), path + "/index");
        const json& att = need(lj, "attachment", path);
        b.vertex = as_string(need(att, "vertex", path + "/attachment"), path + "/attachment/vertex");
        b.point = elem_from_json(need(att, "point", path + "/attachment"), F, path + "/attachment/point");
        t.leaves.push_back(std::move(b));
    }
    return t;
}

std::string serialize_tree(const HurwitzTree& t)
{
    ojson o;
    o["p"] = t.p;
    o["n"] = t.n;
    o["field"] = field_to_json(t.field);
    ojson root;
    root["id"] = t.root;
    if (t.reduction_type) {
        root["reduction_type"] = rt_to_json(*t.reduction_type);
        ojson text = ojson::array();
        for (std::size_t i = 0; i < t.reduction_type->length(); ++i) text.push_back(entry_text(t.field, t.reduction_type->entries[i]));
        root["reduction_type_text"] = text;
    }
    o["root"] = root;
    if (t.root_radius != 0) o["root_radius"] = to_string(t.root_radius);
    ojson vs = ojson::array();
    for (const auto& v : t.vertices) {
        ojson vj;
        vj["id"] = v.id;
        vj["depth"] = to_string(v.depth);
        if (v.omega) {
            vj["omega_dx"] = ratfunc_to_json(v.omega->coefficient());
            vj["omega_text"] = v.omega->to_string();
        }
        vj["monodromy_exponent"] = v.monodromy;
        ojson chart = ojson::array();
        for (const auto& c : v.chart) {
            ojson cj;
            cj["child"] = c.child;
            cj["point"] = elem_to_json(t.field, c.point);
            chart.push_back(cj);
        }
        vj["chart"] = chart;
        vs.push_back(vj);
    }
    o["vertices"] = vs;
    ojson es = ojson::array();
    for (const auto& e : t.edges) {
        ojson ej;
        ej["id"] = e.id;
        ej["source"] = e.source;
        ej["target"] = e.target;
        ej["thickness"] = to_string(e.thickness);
        ej["slope"] = e.slope;
        es.push_back(ej);
    }
    o["edges"] = es;
    ojson ls = ojson::array();
    for (const auto& b : t.leaves) {
        ojson bj;
        bj["id"] = b.id;
        bj["conductor"] = b.conductor;
        bj["index"] = b.index;
        ojson att;
        att["vertex"] = b.vertex;
        att["point"] = elem_to_json(t.field, b.point);
        bj["attachment"] = att;
        ls.push_back(bj);
    }
    o["leaves"] = ls;
    return dump(o);
}

ReductionType parse_reduction_type(std::string_view text)
{
    const json j = parse_json(text);
    FieldPtr F;
    if (j.contains("field")) F = field_from_json(j["field"], "/field");
    else F = with_path("/p", [&] { return Field::prime(as_int(need(j, "p", ""), "/p")); });
    if (j.contains("p") && as_int(j["p"], "/p") != F->p()) fail("/p", "differs from the field characteristic");
    return rt_from_json(need(j, "reduction_type", ""), F, "/reduction_type");
}

std::string serialize_reduction_type(const ReductionType& rt)
{
    ojson o;
    o["p"] = rt.p();
    o["field"] = field_to_json(rt.field);
    o["reduction_type"] = rt_to_json(rt);
    return dump(o);
}

VertexMap parse_vertex_map(std::string_view text)
{
    const json j = parse_json(text);
    VertexMap m;
    auto pairs = [&](const char* key, std::vector<std::pair<std::string, std::string>>& out) {
        if (!j.contains(key)) return;
        const json& arr = j[key];
        const std::string path = std::string("/") + key;
        if (!arr.is_array()) fail(path, "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string sub = path + "/" + std::to_string(i);
            out.emplace_back(as_string(need(arr[i], "lo", sub), sub + "/lo"), as_string(need(arr[i], "hi", sub), sub + "/hi"));
        }
    };
    pairs("vertices", m.vertices);
    pairs("leaves", m.leaves);
    if (j.contains("places")) {
        const json& arr = j["places"];
        if (!arr.is_array()) fail("/places", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string sub = "/places/" + std::to_string(i);
            const RationalPlace lo = place_from_json(need(arr[i], "lo", sub), sub + "/lo");
            const json& hj = need(arr[i], "hi", sub);
            PlaceLocus locus;
            if (hj.contains("vertex")) locus.vertex = as_string(hj["vertex"], sub + "/hi/vertex");
            else locus.place = place_from_json(hj, sub + "/hi");
            m.places.emplace_back(lo, locus);
        }
    }
    return m;
}

std::string serialize_vertex_map(const VertexMap& m)
{
    ojson o;
    auto pairs = [](const std::vector<std::pair<std::string, std::string>>& in) {
        ojson arr = ojson::array();
        for (const auto& [lo, hi] : in) {
            ojson e;
            e["lo"] = lo;
            e["hi"] = hi;
            arr.push_back(e);
        }
        return arr;
    };
    o["vertices"] = pairs(m.vertices);
    o["leaves"] = pairs(m.leaves);
    ojson places = ojson::array();
    for (const auto& [lo, hi] : m.places) {
        ojson e;
        e["lo"] = place_to_json(lo);
        if (hi.vertex) {
            ojson v;
            v["vertex"] = *hi.vertex;
            e["hi"] = v;
        } else {
            e["hi"] = place_to_json(*hi.place);
        }
        places.push_back(e);
    }
    o["places"] = places;
    return dump(o);
}

ExtensionTarget parse_target(std::string_view text, const FieldPtr& field)
{
    const json j = parse_json(text);
    ExtensionTarget t;
    const std::string mode = j.contains("mode") ? as_string(j["mode"], "/mode") : "";
    if (mode == "MINIMAL") t.mode = TargetMode::MINIMAL;
    else if (mode == "GENERAL") t.mode = TargetMode::GENERAL;
    else if (!mode.empty()) fail("/mode", "expected MINIMAL or GENERAL");
    if (j.contains("l")) t.l = as_int(j["l"], "/l");
    if (t.mode == TargetMode::GENERAL && !j.contains("l") && !j.contains("m_n")) fail("/l", "GENERAL target needs l or m_n");
    if (j.contains("m_n")) t.conductor = as_int(j["m_n"], "/m_n");
    if (j.contains("root_goal") && !j["root_goal"].is_null()) {
        const json& g = j["root_goal"];
        if (g.contains("reduction_type")) t.root_reduction_type = rt_from_json(g["reduction_type"], field, "/root_goal/reduction_type");
        if (g.contains("omega_dx")) t.root_form = DifferentialForm(ratfunc_from_json(g["omega_dx"], field, "/root_goal/omega_dx"));
    }
    if (mode.empty() && !t.root_reduction_type && !t.conductor) fail("/mode", "target needs a mode, m_n or a root reduction type");
    t.derive_mode = mode.empty();
    return t;
}

std::string serialize_target(const ExtensionTarget& t)
{
    ojson o;
    if (!t.derive_mode) o["mode"] = t.mode == TargetMode::MINIMAL ? "MINIMAL" : "GENERAL";
    if (t.mode == TargetMode::GENERAL && t.l > 0) o["l"] = t.l;
    if (t.conductor) o["m_n"] = *t.conductor;
    ojson g = ojson::object();
    if (t.root_reduction_type) g["reduction_type"] = rt_to_json(*t.root_reduction_type);
    if (t.root_form) g["omega_dx"] = ratfunc_to_json(t.root_form->coefficient());
    o["root_goal"] = g;
    return dump(o);
}

std::string serialize_report(const ValidationReport& r)
{
    return dump(report_to_json(r));
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << content;
}

}  // namespace hurwitz
