//
// equitangent — command-line driver: construct the planar curves, verify
// equitangency / width / optics claims, scan 3D surfaces for the
// equitangent locus, and render figures as SVG.
//
// Exit codes: 0 verified (or construction/render succeeded), 1 verification
// failed, 2 usage or precondition error (error name on stderr).
//
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqt/eqt.hpp"

namespace {

using eqt::io::json;

std::vector<double> parse_numbers(const std::string& text, std::size_t expected,
                                  const char* what) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            eqt::fail("BadArgument", std::string(what) + ": cannot parse \"" + tok + "\"");
        }
    }
    if (expected != 0 && out.size() != expected)
        eqt::fail("BadArgument",
                  std::string(what) + ": expected " + std::to_string(expected) + " numbers");
    return out;
}

eqt::Point2 parse_point(const std::string& text, const char* what) {
    const auto v = parse_numbers(text, 2, what);
    return {v[0], v[1]};
}

json point_json(eqt::Point2 p) { return json::array({p.x, p.y}); }

json line_json(const eqt::Line2& l) {
    return {{"px", l.point.x}, {"py", l.point.y}, {"dx", l.dir.x}, {"dy", l.dir.y}};
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

json run_construct(const json& recipe) {
    if (!recipe.is_object() || !recipe.contains("construction"))
        eqt::fail("BadRecipe", "recipe must carry a \"construction\" field");
    const std::string kind = recipe.at("construction").get<std::string>();

    if (kind == "figure1") {
        const json& jc1 = recipe.at("c1");
        const json& jc2 = recipe.at("c2");
        const eqt::Circle2 c1({jc1.at("cx").get<double>(), jc1.at("cy").get<double>()},
                              jc1.at("r").get<double>());
        const eqt::Circle2 c2({jc2.at("cx").get<double>(), jc2.at("cy").get<double>()},
                              jc2.at("r").get<double>());
        const eqt::Point2 x{recipe.at("x").at(0).get<double>(), recipe.at("x").at(1).get<double>()};
        const eqt::Point2 y{recipe.at("y").at(0).get<double>(), recipe.at("y").at(1).get<double>()};
        const double axis_tol = recipe.value("axis_tol", 1e-2);
        const eqt::FigureOneCurve fig = eqt::build_figure1(c1, c2, x, y, axis_tol);
        return {{"gamma", eqt::io::to_json(fig.curve)},
                {"ell", line_json(fig.axis)},
                {"x", point_json(fig.x)},
                {"y", point_json(fig.y)},
                {"tangency",
                 {{"a", point_json(fig.a)},
                  {"b", point_json(fig.b)},
                  {"c", point_json(fig.c)},
                  {"d", point_json(fig.d)}}}};
    }
    if (kind == "reuleaux" || kind == "radical_polygon") {
        const int n = recipe.at("n").get<int>();
        const double lambda = recipe.at("lambda").get<double>();
        const double epsilon = recipe.value("epsilon", 0.0);
        const eqt::RoundedReuleaux rr = eqt::build_rounded_reuleaux(n, lambda, epsilon);
        json out = {{"gamma", eqt::io::to_json(rr.curve)}};
        json verts = json::array();
        for (const eqt::Point2& v : rr.vertices) verts.push_back(point_json(v));
        out["vertices"] = verts;
        if (kind == "radical_polygon") {
            const eqt::RadicalPolygon poly = eqt::build_radical_polygon(n, lambda, epsilon);
            json gv = json::array();
            for (const eqt::Point2& p : poly.vertices) gv.push_back(point_json(p));
            out["Gamma"] = gv;
        }
        return out;
    }
    if (kind == "hyperbolic_reuleaux") {
        const double width = recipe.at("width").get<double>();
        const double epsilon = recipe.value("epsilon", 0.0);
        const double y0 = recipe.value("anchor_y", 1.0);
        const eqt::HyperbolicReuleaux hr = eqt::build_hyperbolic_reuleaux(width, epsilon, y0);
        json centers = json::array();
        for (const eqt::HalfPlanePoint& c : hr.centers) centers.push_back(point_json(c.to_point()));
        return {{"gamma", eqt::io::to_json(hr.curve)},
                {"centers", centers},
                {"hyperbolic_width", hr.width}};
    }
    eqt::fail("BadRecipe", "unknown construction \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string curve_file;
    std::string check;
    std::string line_spec;
    std::string focus_p, focus_q;
    double tangent_param = eqt::kPi / 2.0;
    int samples = 0; // 0: per-check default
    double tol = 0.0;
    double span = 0.0;
    double xmin = -10.0, xmax = 10.0;
    std::string out_file;
};

//! Sample points of a line outside the curve: if the line crosses the
//! curve, sample beyond each exit point; otherwise spread around the foot
//! of the curve center.
template <class Curve>
std::vector<eqt::Point2> exterior_line_samples(const Curve& curve, const eqt::Line2& line,
                                               int n, double span) {
    using namespace eqt;
    const Box2 box = bounding_box(curve);
    const double diam = box.diagonal();
    const double t0 = dot(box.center() - line.point, line.dir);
    auto exterior = [&](double t) { return is_exterior_point(curve, line.at(t)); };
    const double margin = 0.02 * diam;
    std::vector<Point2> pts;
    if (exterior(t0)) {
        for (int i = 0; i < n; ++i)
            pts.push_back(line.at(t0 - span + 2.0 * span * (double(i) + 0.5) / double(n)));
        return pts;
    }
    auto exit_param = [&](double dir) {
        double inside = t0, outside = t0 + dir * (diam + span);
        if (!exterior(outside))
            fail("PointNotExterior", "cannot find exterior stretch of the locus line");
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (inside + outside);
            (exterior(mid) ? outside : inside) = mid;
        }
        return outside;
    };
    const double right = exit_param(1.0), left = exit_param(-1.0);
    const int half = n / 2;
    for (int i = 0; i < n - half; ++i)
        pts.push_back(line.at(left - margin - span * (double(i) + 0.5) / double(n - half)));
    for (int i = 0; i < half; ++i)
        pts.push_back(line.at(right + margin + span * (double(i) + 0.5) / double(half)));
    return pts;
}

int run_verify(const VerifyOptions& opt) {
    using namespace eqt;
    const json file = io::read_json_file(opt.curve_file);
    const io::PlanarCurve curve = file.is_object() && file.contains("gamma")
                                      ? io::curve_from_json(file.at("gamma"))
                                      : io::curve_from_json(file);
    json report;
    bool pass = false;

    if (opt.check == "equitangent-line") {
        std::optional<Line2> line;
        if (!opt.line_spec.empty()) {
            const auto v = parse_numbers(opt.line_spec, 4, "--line");
            line.emplace(Point2{v[0], v[1]}, Vec2{v[2], v[3]});
        } else if (file.is_object() && file.contains("ell")) {
            const json& l = file.at("ell");
            line.emplace(Point2{l.at("px").get<double>(), l.at("py").get<double>()},
                         Vec2{l.at("dx").get<double>(), l.at("dy").get<double>()});
        } else {
            fail("BadArgument", "equitangent-line needs --line or a curve file with \"ell\"");
        }
        const int n = opt.samples > 0 ? opt.samples : 50;
        const double tol = opt.tol > 0.0 ? opt.tol : 1e-8;
        std::visit(
            [&](const auto& c) {
                const double span = opt.span > 0.0 ? opt.span : 4.0 * curve_diameter(c);
                const auto pts = exterior_line_samples(c, *line, n, span);
                const EquitangentResult r = equitangent_residual(c, pts);
                pass = r.max_residual < tol;
                report = {{"check", "equitangent-line"},
                          {"n_samples", pts.size()},
                          {"max_residual", r.max_residual},
                          {"worst_point", point_json(r.worst_point)},
                          {"tol", tol},
                          {"pass", pass}};
            },
            curve);
    } else if (opt.check == "constant-width") {
        const double tol = opt.tol > 0.0 ? opt.tol : 1e-9;
        const int n = opt.samples > 0 ? opt.samples : 720;
        std::visit(
            [&](const auto& c) {
                double wmin = std::numeric_limits<double>::infinity(), wmax = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double w = euclidean_width(c, kPi * double(i) / double(n));
                    wmin = std::min(wmin, w);
                    wmax = std::max(wmax, w);
                }
                pass = (wmax - wmin) < tol;
                report = {{"check", "constant-width"}, {"n_directions", n},
                          {"width_min", wmin},         {"width_max", wmax},
                          {"spread", wmax - wmin},     {"tol", tol},
                          {"pass", pass}};
            },
            curve);
    } else if (opt.check == "hyperbolic-width") {
        const double tol = opt.tol > 0.0 ? opt.tol : 1e-6;
        const int n = opt.samples > 0 ? opt.samples : 100;
        std::vector<double> xs;
        for (int i = 0; i < n; ++i)
            xs.push_back(opt.xmin + (opt.xmax - opt.xmin) * (double(i) + 0.5) / double(n));
        std::visit(
            [&](const auto& c) {
                const BoundaryEquitangency eq = equitangent_from_boundary_residual(c, xs);
                report = {{"check", "hyperbolic-width"},
                          {"n_samples", n},
                          {"equitangency_residual", eq.max_residual},
                          {"tol", tol}};
                if (eq.max_residual >= tol) {
                    report["pass"] = false;
                    report["reason"] = "not equitangent from the boundary line";
                    pass = false;
                    return;
                }
                const auto profile = hyperbolic_width_profile(c, xs, tol);
                const auto [lo, hi] = width_profile_range(profile);
                pass = (hi - lo) < tol;
                report["width_min"] = lo;
                report["width_max"] = hi;
                report["width_spread"] = hi - lo;
                report["pass"] = pass;
                if (!opt.out_file.empty()) {
                    std::vector<io::WidthCsvRow> rows;
                    for (const WidthSample& w : profile)
                        rows.push_back({w.x, w.len1, w.len2, w.width});
                    io::write_text_file(opt.out_file, io::width_profile_csv(rows));
                }
            },
            curve);
    } else if (opt.check == "ellipse-optics") {
        if (opt.focus_p.empty() || opt.focus_q.empty())
            fail("BadArgument", "ellipse-optics needs --focus-p and --focus-q");
        const Point2 P = parse_point(opt.focus_p, "--focus-p");
        const Point2 Q = parse_point(opt.focus_q, "--focus-q");
        const double tol = opt.tol > 0.0 ? opt.tol : 1e-7;
        const int n = opt.samples > 0 ? opt.samples : 64;
        std::visit(
            [&](const auto& c) {
                const auto cfg = make_focal_config(c, P, Q, opt.tangent_param);
                const ConverseReport r = converse_check(cfg, n, tol);
                pass = r.is_ellipse;
                report = {{"max_angle_residual", r.max_angle_residual},
                          {"max_product_residual", r.max_product_residual},
                          {"hausdorff", r.hausdorff},
                          {"n_used", r.n_used},
                          {"n_excluded", r.n_excluded},
                          {"verdict", r.is_ellipse ? "ellipse" : "not_ellipse"}};
            },
            curve);
    } else {
        fail("UnknownCheck", "check \"" + opt.check + "\" is not one of equitangent-line, "
                             "constant-width, hyperbolic-width, ellipse-optics");
    }

    std::cout << report.dump(2) << "\n";
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// scan3d
// ---------------------------------------------------------------------------

eqt::ImplicitOvaloid make_surface(const std::string& name, const std::string& params) {
    using eqt::ImplicitOvaloid;
    if (name == "sphere") {
        const double r = params.empty() ? 1.0 : parse_numbers(params, 1, "--params")[0];
        return ImplicitOvaloid::sphere(r);
    }
    if (name == "ellipsoid" || name == "spheroid" || name == "triaxial") {
        const auto v = parse_numbers(params.empty() ? "1,1,1.5" : params, 3, "--params");
        return ImplicitOvaloid::ellipsoid(v[0], v[1], v[2]);
    }
    if (name == "quartic") {
        const double d = params.empty() ? 0.1 : parse_numbers(params, 1, "--params")[0];
        return ImplicitOvaloid::quartic_sphere(d);
    }
    eqt::fail("UnknownSurface", "surface \"" + name + "\" is not in the corpus");
}

int run_scan3d(const std::string& surface, const std::string& params, const std::string& grid_spec,
               double tol, int contact_samples, const std::string& contact_from,
               const std::string& out_file) {
    using namespace eqt;
    const ImplicitOvaloid M = make_surface(surface, params);
    if (!contact_from.empty()) {
        const auto v = parse_numbers(contact_from, 3, "--contact-from");
        const Vec3 x{v[0], v[1], v[2]};
        const ContactCurve cc = contact_curve(M, x, contact_samples);
        if (!out_file.empty()) io::write_text_file(out_file, io::contact_curve_csv(cc));
        const LengthSpread s = tangent_length_spread(M, x, contact_samples);
        const json summary = {{"surface", surface},
                              {"source", {x.x, x.y, x.z}},
                              {"n_points", cc.points.size()},
                              {"length_min", s.min},
                              {"length_max", s.max},
                              {"spread", s.spread}};
        std::cout << summary.dump(2) << "\n";
        return 0;
    }
    const auto g = parse_numbers(grid_spec, 5, "--grid");
    const std::vector<Vec3> grid =
        grid_points(int(g[0]), int(g[1]), int(g[2]), g[3], g[4]);
    const LocusScan scan = sample_equitangent_locus(M, grid, tol, contact_samples);
    if (!out_file.empty()) io::write_text_file(out_file, io::locus_csv(scan));

    const auto lines = find_collinear_lines(scan.members, 1e-6);
    json jl = json::array();
    for (const LocusLine& l : lines)
        jl.push_back({{"point", {l.point.x, l.point.y, l.point.z}},
                      {"dir", {l.dir.x, l.dir.y, l.dir.z}},
                      {"count", l.count}});
    const json summary = {{"surface", surface},
                          {"n_grid", grid.size()},
                          {"n_exterior", scan.exterior_rows.size()},
                          {"n_interior", scan.n_interior},
                          {"n_failed", scan.n_failed},
                          {"n_equitangent", scan.members.size()},
                          {"tol", tol},
                          {"dense_locus", scan.members.size() > 400},
                          {"lines", jl}};
    std::cout << summary.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// render
// ---------------------------------------------------------------------------

int run_render(const std::string& input, const std::string& out_file, double tol) {
    using namespace eqt;
    std::string svg;
    const bool looks_csv = input.size() > 4 && input.substr(input.size() - 4) == ".csv";
    if (looks_csv) {
        std::ifstream in(input);
        if (!in) fail("FileNotFound", input);
        std::stringstream buf;
        buf << in.rdbuf();
        svg = io::render_scan_svg(io::parse_locus_csv(buf.str()), tol > 0.0 ? tol : 1e-6);
    } else {
        svg = io::render_construction_svg(io::read_json_file(input));
    }
    io::write_text_file(out_file, svg);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"equitangent curves and surfaces: constructions and numerical verification"};
    app.require_subcommand(1);

    std::string recipe_file, out_file, curve_file;
    auto* construct = app.add_subcommand("construct", "build a curve from a recipe file");
    construct->add_option("--recipe", recipe_file, "recipe JSON")->required();
    construct->add_option("--out", out_file, "output file (default stdout)");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "run a verification check on a curve file");
    verify->add_option("--curve", vo.curve_file, "curve JSON")->required();
    verify->add_option("--check", vo.check,
                       "equitangent-line | constant-width | hyperbolic-width | ellipse-optics")
        ->required();
    verify->add_option("--line", vo.line_spec, "locus line px,py,dx,dy");
    verify->add_option("--samples", vo.samples, "sample count");
    verify->add_option("--tol", vo.tol, "tolerance override");
    verify->add_option("--span", vo.span, "sampling span along the line");
    verify->add_option("--xmin", vo.xmin, "hyperbolic: left end of boundary samples");
    verify->add_option("--xmax", vo.xmax, "hyperbolic: right end of boundary samples");
    verify->add_option("--focus-p", vo.focus_p, "ellipse-optics: first focus x,y");
    verify->add_option("--focus-q", vo.focus_q, "ellipse-optics: second focus x,y");
    verify->add_option("--tangent-param", vo.tangent_param, "ellipse-optics: tangency parameter");
    verify->add_option("--out", vo.out_file, "optional CSV output (hyperbolic-width)");

    std::string surface = "sphere", surface_params, grid_spec = "11,11,11,-3,3";
    std::string contact_from;
    double scan_tol = 1e-8;
    int contact_samples = 256;
    auto* scan = app.add_subcommand("scan3d", "scan a grid for the equitangent locus");
    scan->add_option("--surface", surface, "sphere | ellipsoid | quartic")->required();
    scan->add_option("--params", surface_params, "surface parameters, comma separated");
    scan->add_option("--grid", grid_spec, "nx,ny,nz,min,max");
    scan->add_option("--tol", scan_tol, "spread tolerance for membership");
    scan->add_option("--contact-samples", contact_samples, "contact curve sample count");
    scan->add_option("--contact-from", contact_from,
                     "emit the contact curve from this source x,y,z instead of scanning");
    scan->add_option("--out", out_file, "CSV output file");

    std::string render_in, render_out;
    double render_tol = 0.0;
    auto* render = app.add_subcommand("render", "render a curve/scan file as SVG");
    render->add_option("--curve", render_in, "curve JSON or scan CSV")->required();
    render->add_option("--out", render_out, "SVG output file")->required();
    render->add_option("--tol", render_tol, "scan rendering: membership tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (construct->parsed()) {
            const json out = run_construct(eqt::io::read_json_file(recipe_file));
            if (out_file.empty())
                std::cout << out.dump(2) << "\n";
            else
                eqt::io::write_text_file(out_file, out.dump(2) + "\n");
            return 0;
        }
        if (verify->parsed()) return run_verify(vo);
        if (scan->parsed())
            return run_scan3d(surface, surface_params, grid_spec, scan_tol, contact_samples,
                              contact_from, out_file);
        if (render->parsed()) return run_render(render_in, render_out, render_tol);
    } catch (const eqt::Error& e) {
        std::cerr << e.name() << "\n" << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "InternalError\n" << e.what() << "\n";
        return 2;
    }
    return 2;
}
