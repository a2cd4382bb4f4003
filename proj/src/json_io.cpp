#include "anisoperim/json_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace anisoperim {

namespace {

using json = nlohmann::ordered_json;

json parse_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const char* what) {
    if (!obj.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known)
            throw ParseError(std::string(what) + ": unknown key \"" + item.key() + "\"");
    }
}

const json& field(const json& obj, const char* key, const char* what) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string(what) + ": missing key \"" + key + "\"");
    return *it;
}

double as_double(const json& v, const char* what) {
    if (!v.is_number()) throw ParseError(std::string(what) + ": expected a number");
    return v.get<double>();
}

long as_integer(const json& v, const char* what) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer");
    return v.get<long>();
}

std::string as_string(const json& v, const char* what) {
    if (!v.is_string()) throw ParseError(std::string(what) + ": expected a string");
    return v.get<std::string>();
}

Vec as_vec(const json& v, const char* what) {
    if (!v.is_array() || v.empty() || v.size() > 4)
        throw ParseError(std::string(what) + ": expected an array of 1 to 4 numbers");
    Vec out(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = as_double(v[i], what);
    return out;
}

json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

// --- norms -----------------------------------------------------------------

Anisotropy norm_from(const json& obj);

OmegaSpec omega_from(const json& obj) {
    check_keys(obj, {"kind", "p"}, "omega descriptor");
    if (obj.contains("p")) {
        if (obj.contains("kind")) throw ParseError("omega descriptor: give \"p\" or \"kind\", not both");
        return OmegaSpec::pcomb(as_double(field(obj, "p", "omega descriptor"), "omega p"));
    }
    const std::string kind = as_string(field(obj, "kind", "omega descriptor"), "omega kind");
    if (kind == "max") return OmegaSpec::max();
    if (kind == "sum") return OmegaSpec::sum();
    throw ParseError("omega descriptor: unknown kind \"" + kind + "\"");
}

json omega_to_json(const OmegaSpec& om) {
    json obj;
    switch (om.kind) {
        case OmegaKind::Max: obj["kind"] = "max"; break;
        case OmegaKind::Sum: obj["kind"] = "sum"; break;
        case OmegaKind::PComb: obj["p"] = om.p; break;
    }
    return obj;
}

int norm_dim_field(const json& obj) {
    const long d = as_integer(field(obj, "dim", "norm descriptor"), "norm dim");
    if (d < 1 || d > 4) throw ParseError("norm descriptor: dim must be between 1 and 4");
    return static_cast<int>(d);
}

Anisotropy norm_from(const json& obj) {
    if (!obj.is_object()) throw ParseError("norm descriptor: expected a JSON object");
    const std::string kind = as_string(field(obj, "kind", "norm descriptor"), "norm kind");
    try {
        if (kind == "euclidean") {
            check_keys(obj, {"kind", "dim"}, "euclidean norm");
            return Anisotropy::euclidean(norm_dim_field(obj));
        }
        if (kind == "pnorm") {
            check_keys(obj, {"kind", "dim", "p"}, "pnorm");
            const json& p = field(obj, "p", "pnorm");
            double pv;
            if (p.is_string()) {
                const std::string s = p.get<std::string>();
                if (s != "inf") throw ParseError("pnorm: p must be a number or \"inf\"");
                pv = std::numeric_limits<double>::infinity();
            } else {
                pv = as_double(p, "pnorm p");
            }
            return Anisotropy::pnorm(norm_dim_field(obj), pv);
        }
        if (kind == "polytope") {
            check_keys(obj, {"kind", "vertices"}, "polytope norm");
            const json& vs = field(obj, "vertices", "polytope norm");
            if (!vs.is_array()) throw ParseError("polytope norm: vertices must be an array");
            std::vector<Vec> verts;
            for (const json& v : vs) verts.push_back(as_vec(v, "polytope vertex"));
            return Anisotropy::polytope(std::move(verts));
        }
        if (kind == "cylindrical" || kind == "conical") {
            check_keys(obj, {"kind", "base"}, "composed norm");
            const Anisotropy base = norm_from(field(obj, "base", "composed norm"));
            return kind == "cylindrical" ? Anisotropy::cylindrical(base)
                                         : Anisotropy::conical(base);
        }
        if (kind == "omega") {
            check_keys(obj, {"kind", "omega", "base"}, "omega norm");
            return Anisotropy::omega_composed(omega_from(field(obj, "omega", "omega norm")),
                                              norm_from(field(obj, "base", "omega norm")));
        }
        if (kind == "quadratic") {
            check_keys(obj, {"kind", "form"}, "quadratic norm");
            const json& rows = field(obj, "form", "quadratic norm");
            if (!rows.is_array() || rows.empty() || rows.size() > 4)
                throw ParseError("quadratic norm: form must be a square matrix");
            const int d = static_cast<int>(rows.size());
            Mat form(d, d);
            for (int r = 0; r < d; ++r) {
                const Vec row = as_vec(rows[static_cast<size_t>(r)], "quadratic form row");
                if (static_cast<int>(row.size()) != d)
                    throw ParseError("quadratic norm: form must be a square matrix");
                form.row(r) = row.transpose();
            }
            return Anisotropy::quadratic(form);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("norm descriptor: ") + e.what());
    }
    throw ParseError("norm descriptor: unknown kind \"" + kind + "\"");
}

json norm_to(const Anisotropy& norm) {
    json obj;
    switch (norm.kind()) {
        case NormKind::Euclidean:
            obj["kind"] = "euclidean";
            obj["dim"] = norm.dim();
            break;
        case NormKind::PNorm:
            obj["kind"] = "pnorm";
            obj["dim"] = norm.dim();
            if (std::isinf(norm.p_exponent()))
                obj["p"] = "inf";
            else
                obj["p"] = norm.p_exponent();
            break;
        case NormKind::Polytope: {
            obj["kind"] = "polytope";
            json vs = json::array();
            for (const Vec& v : norm.vertices()) vs.push_back(vec_to_json(v));
            obj["vertices"] = std::move(vs);
            break;
        }
        case NormKind::Cylindrical:
            obj["kind"] = "cylindrical";
            obj["base"] = norm_to(norm.base());
            break;
        case NormKind::Conical:
            obj["kind"] = "conical";
            obj["base"] = norm_to(norm.base());
            break;
        case NormKind::Omega:
            obj["kind"] = "omega";
            obj["omega"] = omega_to_json(norm.omega());
            obj["base"] = norm_to(norm.base());
            break;
        case NormKind::Quadratic: {
            obj["kind"] = "quadratic";
            const Mat& form = norm.quadratic_form();
            json rows = json::array();
            for (Eigen::Index r = 0; r < form.rows(); ++r) {
                json row = json::array();
                for (Eigen::Index c = 0; c < form.cols(); ++c) row.push_back(form(r, c));
                rows.push_back(std::move(row));
            }
            obj["form"] = std::move(rows);
            break;
        }
    }
    return obj;
}

// --- polyhedral sets -------------------------------------------------------

Box window_from(const json& v) {
    if (!v.is_array() || v.size() != 2)
        throw ParseError("window: expected [[lo...],[hi...]]");
    Box w{as_vec(v[0], "window lo"), as_vec(v[1], "window hi")};
    if (w.lo.size() != w.hi.size()) throw ParseError("window: lo/hi dimension mismatch");
    for (Eigen::Index i = 0; i < w.lo.size(); ++i)
        if (!(w.lo[i] < w.hi[i])) throw ParseError("window: lo must be strictly below hi");
    return w;
}

json window_to(const Box& w) {
    json arr = json::array();
    arr.push_back(vec_to_json(w.lo));
    arr.push_back(vec_to_json(w.hi));
    return arr;
}

Halfspace halfspace_from(const json& obj) {
    check_keys(obj, {"normal", "offset"}, "halfspace");
    return Halfspace{as_vec(field(obj, "normal", "halfspace"), "halfspace normal"),
                     as_double(field(obj, "offset", "halfspace"), "halfspace offset")};
}

json halfspace_to(const Halfspace& hs) {
    json obj;
    obj["normal"] = vec_to_json(hs.normal);
    obj["offset"] = hs.offset;
    return obj;
}

PolyhedralSet set_from(const json& obj) {
    if (!obj.is_object()) throw ParseError("set descriptor: expected a JSON object");
    const Box window = window_from(field(obj, "window", "set descriptor"));
    try {
        if (obj.contains("halfspaces")) {
            check_keys(obj, {"halfspaces", "op", "window"}, "halfspace set");
            const json& hs = field(obj, "halfspaces", "halfspace set");
            if (!hs.is_array()) throw ParseError("halfspace set: halfspaces must be an array");
            std::vector<Halfspace> list;
            for (const json& h : hs) list.push_back(halfspace_from(h));
            const std::string op = as_string(field(obj, "op", "halfspace set"), "set op");
            if (op != "intersect" && op != "union")
                throw ParseError("halfspace set: op must be \"intersect\" or \"union\"");
            return PolyhedralSet::from_halfspaces(
                std::move(list), op == "intersect" ? SetOp::Intersect : SetOp::Union, window);
        }
        if (obj.contains("cells")) {
            check_keys(obj, {"cells", "window"}, "cell set");
            const json& cs = field(obj, "cells", "cell set");
            if (!cs.is_array()) throw ParseError("cell set: cells must be an array");
            std::vector<ConvexCell> cells;
            for (const json& c : cs) {
                if (!c.is_array()) throw ParseError("cell set: each cell is an array of halfspaces");
                ConvexCell cell;
                for (const json& h : c) cell.push_back(halfspace_from(h));
                cells.push_back(std::move(cell));
            }
            return PolyhedralSet::from_cells(std::move(cells), window);
        }
        if (obj.contains("facets")) {
            check_keys(obj, {"facets", "window"}, "facet set");
            const json& fs = field(obj, "facets", "facet set");
            if (!fs.is_array()) throw ParseError("facet set: facets must be an array");
            std::vector<Facet> facets;
            for (const json& f : fs) {
                check_keys(f, {"normal", "area", "anchor", "poly"}, "facet");
                Facet facet;
                facet.normal = as_vec(field(f, "normal", "facet"), "facet normal");
                facet.area = as_double(field(f, "area", "facet"), "facet area");
                facet.anchor = as_vec(field(f, "anchor", "facet"), "facet anchor");
                if (f.contains("poly"))
                    for (const json& p : f["poly"]) facet.poly.push_back(as_vec(p, "facet loop"));
                facets.push_back(std::move(facet));
            }
            return PolyhedralSet::from_facets(std::move(facets), window);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("set descriptor: ") + e.what());
    }
    throw ParseError("set descriptor: needs \"halfspaces\", \"cells\", or \"facets\"");
}

json set_to(const PolyhedralSet& set) {
    json obj;
    if (set.has_generators()) {
        json cells = json::array();
        for (const ConvexCell& cell : set.cells()) {
            json c = json::array();
            for (const Halfspace& hs : cell) c.push_back(halfspace_to(hs));
            cells.push_back(std::move(c));
        }
        obj["cells"] = std::move(cells);
    } else {
        json fs = json::array();
        for (const Facet& f : set.facets()) {
            json fo;
            fo["normal"] = vec_to_json(f.normal);
            fo["area"] = f.area;
            fo["anchor"] = vec_to_json(f.anchor);
            if (!f.poly.empty()) {
                json loop = json::array();
                for (const Vec& p : f.poly) loop.push_back(vec_to_json(p));
                fo["poly"] = std::move(loop);
            }
            fs.push_back(std::move(fo));
        }
        obj["facets"] = std::move(fs);
    }
    obj["window"] = window_to(set.window());
    return obj;
}

// --- lattices and grids ----------------------------------------------------

Lattice lattice_from(const json& obj) {
    check_keys(obj, {"dims", "h", "origin"}, "lattice");
    const json& dims = field(obj, "dims", "lattice");
    if (!dims.is_array() || dims.empty() || dims.size() > 2)
        throw ParseError("lattice: dims must be an array of 1 or 2 integers");
    std::vector<int> d;
    for (const json& v : dims) d.push_back(static_cast<int>(as_integer(v, "lattice dims")));
    const double h = as_double(field(obj, "h", "lattice"), "lattice h");
    Vec origin = Vec::Zero(static_cast<Eigen::Index>(d.size()));
    if (obj.contains("origin")) {
        origin = as_vec(obj["origin"], "lattice origin");
        if (origin.size() != static_cast<Eigen::Index>(d.size()))
            throw ParseError("lattice: origin dimension does not match dims");
    }
    try {
        return make_lattice(std::move(d), h, std::move(origin));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("lattice: ") + e.what());
    }
}

json lattice_to(const Lattice& lat) {
    json obj;
    obj["dims"] = lat.dims;
    obj["h"] = lat.h;
    obj["origin"] = vec_to_json(lat.origin);
    return obj;
}

SolverParams solver_from(const json& obj) {
    check_keys(obj, {"gap_tol", "max_iters", "seed"}, "solver");
    SolverParams p;
    if (obj.contains("gap_tol")) p.gap_tol = as_double(obj["gap_tol"], "solver gap_tol");
    if (obj.contains("max_iters"))
        p.max_iters = static_cast<int>(as_integer(obj["max_iters"], "solver max_iters"));
    if (obj.contains("seed")) {
        const json& s = obj["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
            throw ParseError("solver seed: expected a non-negative integer");
        p.seed = s.get<std::uint64_t>();
    }
    if (!(p.gap_tol > 0.0)) throw ParseError("solver: gap_tol must be positive");
    if (p.max_iters < 1) throw ParseError("solver: max_iters must be positive");
    return p;
}

}  // namespace

Anisotropy norm_from_json(const std::string& text) {
    return norm_from(parse_text(text, "norm descriptor"));
}

std::string norm_to_json(const Anisotropy& norm) { return norm_to(norm).dump(2) + "\n"; }

PolyhedralSet set_from_json(const std::string& text) {
    return set_from(parse_text(text, "set descriptor"));
}

std::string set_to_json(const PolyhedralSet& set) { return set_to(set).dump(2) + "\n"; }

SolveScenario scenario_from_json(const std::string& text) {
    const json obj = parse_text(text, "scenario");
    check_keys(obj, {"norm", "lattice", "collar", "solver"}, "scenario");
    Anisotropy norm = norm_from(field(obj, "norm", "scenario"));
    Lattice lat = lattice_from(field(obj, "lattice", "scenario"));
    if (norm.dim() != lat.n() + 1)
        throw ParseError("scenario: norm dimension " + std::to_string(norm.dim()) +
                         " does not match lattice dimension " + std::to_string(lat.n()) +
                         " plus one");

    const json& collar = field(obj, "collar", "scenario");
    check_keys(collar, {"kind", "zeta", "set"}, "collar");
    const std::string kind = as_string(field(collar, "kind", "collar"), "collar kind");
    GridFunction data(lat);
    if (kind == "linear") {
        check_keys(collar, {"kind", "zeta"}, "linear collar");
        const Vec zeta = as_vec(field(collar, "zeta", "linear collar"), "collar zeta");
        if (zeta.size() != lat.n())
            throw ParseError("collar: zeta dimension " + std::to_string(zeta.size()) +
                             " does not match lattice dimension " + std::to_string(lat.n()));
        data = GridFunction::sampled(lat, [&zeta](const Vec& x) { return zeta.dot(x); });
    } else if (kind == "indicator") {
        check_keys(collar, {"kind", "set"}, "indicator collar");
        const PolyhedralSet set = set_from(field(collar, "set", "indicator collar"));
        if (set.dim() != lat.n())
            throw ParseError("collar: set dimension " + std::to_string(set.dim()) +
                             " does not match lattice dimension " + std::to_string(lat.n()));
        data = GridFunction::sampled(
            lat, [&set](const Vec& x) { return set.contains(x) ? 1.0 : 0.0; });
    } else {
        throw ParseError("collar: unknown kind \"" + kind + "\"");
    }

    SolverParams params;
    if (obj.contains("solver")) params = solver_from(obj["solver"]);
    return SolveScenario{std::move(norm), std::move(lat), std::move(data), params};
}

std::string grid_set_to_json(const GridSet& s) {
    const Lattice& lat = s.lattice();
    json obj;
    obj["lattice"] = lattice_to(lat);
    json values = json::array();
    if (lat.n() == 1) {
        for (int i = -1; i <= lat.nx(); ++i) values.push_back(s.get(i) ? 1 : 0);
    } else {
        for (int j = -1; j <= lat.ny(); ++j)
            for (int i = -1; i <= lat.nx(); ++i) values.push_back(s.get(i, j) ? 1 : 0);
    }
    obj["values"] = std::move(values);
    return obj.dump(2) + "\n";
}

GridSet grid_set_from_json(const std::string& text) {
    const json obj = parse_text(text, "grid set");
    check_keys(obj, {"lattice", "values"}, "grid set");
    const Lattice lat = lattice_from(field(obj, "lattice", "grid set"));
    const json& values = field(obj, "values", "grid set");
    const long expect = lat.n() == 1 ? lat.nx() + 2
                                     : static_cast<long>(lat.nx() + 2) * (lat.ny() + 2);
    if (!values.is_array() || static_cast<long>(values.size()) != expect)
        throw ParseError("grid set: values must hold " + std::to_string(expect) +
                         " entries for this lattice");
    GridSet s(lat);
    size_t k = 0;
    auto bit = [&](const char* what) {
        const long v = as_integer(values[k++], what);
        if (v != 0 && v != 1) throw ParseError("grid set: values must be 0 or 1");
        return v == 1;
    };
    if (lat.n() == 1) {
        for (int i = -1; i <= lat.nx(); ++i) s.set_ext(i, 0, bit("grid set value"));
    } else {
        for (int j = -1; j <= lat.ny(); ++j)
            for (int i = -1; i <= lat.nx(); ++i) s.set_ext(i, j, bit("grid set value"));
    }
    return s;
}

std::string verdict_to_json(const Verdict& v) {
    json obj;
    obj["status"] = to_string(v.status);
    obj["method"] = to_string(v.method);
    obj["window"] = v.window;
    obj["candidate_energy"] = v.candidate_energy;
    obj["competitor_energy"] = v.competitor_energy;
    obj["threshold_ties"] = v.threshold_ties;
    if (!v.note.empty()) obj["note"] = v.note;
    if (v.competitor.has_value())
        obj["competitor"] = json::parse(grid_set_to_json(*v.competitor));
    return obj.dump(2) + "\n";
}

std::string grid_function_to_csv(const GridFunction& u) {
    const Lattice& lat = u.lattice();
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    std::string doc;
    if (lat.n() == 1) {
        doc = "x,u\n";
        for (int i = 0; i < lat.nx(); ++i) {
            const Vec c = lat.center(i);
            doc += num(c(0)) + "," + num(u.get(i)) + "\n";
        }
        return doc;
    }
    doc = "x,y,u\n";
    for (int j = 0; j < lat.ny(); ++j)
        for (int i = 0; i < lat.nx(); ++i) {
            const Vec c = lat.center(i, j);
            doc += num(c(0)) + "," + num(c(1)) + "," + num(u.get(i, j)) + "\n";
        }
    return doc;
}

}  // namespace anisoperim
