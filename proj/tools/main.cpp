#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "solibound/suites.hpp"

using nlohmann::ordered_json;
using namespace solibound;

namespace {

/* exit codes: 0 success, 1 failed verification / poles found, 2 bad input */
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/* "0.5", "i", "-i", "2i", "0.5+0.3i", "1e-3-2e-2i" */
Cx parse_complex(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw CLI::ValidationError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') {
        size_t used = 0;
        const double re = std::stod(s, &used);
        if (used != s.size()) throw CLI::ValidationError("bad complex literal: " + raw);
        return Cx{re, 0.0};
    }
    s.pop_back();  // trailing i
    // split at the last +/- that starts the imaginary part
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const auto part = [&raw](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw CLI::ValidationError("bad complex literal: " + raw);
        return v;
    };
    if (split == std::string::npos) return Cx{0.0, part(s)};
    return Cx{part(s.substr(0, split)), part(s.substr(split))};
}

double parse_real(const std::string& raw) {
    const Cx v = parse_complex(raw);
    if (v.imag() != 0.0) throw CLI::ValidationError("expected a real value: " + raw);
    return v.real();
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, std::string> out;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CLI::ValidationError("--param expects key=value, got: " + kv);
        out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return out;
}

KPParams kp_params_from(std::map<std::string, std::string> kv) {
    KPParams prm;
    if (auto it = kv.find("alpha"); it != kv.end()) prm.alpha = parse_complex(it->second), kv.erase(it);
    if (auto it = kv.find("y0"); it != kv.end()) prm.y0 = parse_real(it->second), kv.erase(it);
    if (auto it = kv.find("p"); it != kv.end()) prm.p = prm.q = parse_complex(it->second), kv.erase(it);
    if (auto it = kv.find("q"); it != kv.end()) prm.q = parse_complex(it->second), kv.erase(it);
    if (auto it = kv.find("d"); it != kv.end()) prm.d = parse_complex(it->second), kv.erase(it);
    if (auto it = kv.find("l"); it != kv.end()) prm.l = parse_complex(it->second), kv.erase(it);
    if (auto it = kv.find("g"); it != kv.end()) prm.g = parse_complex(it->second), kv.erase(it);
    if (!kv.empty()) throw CLI::ValidationError("unknown parameter: " + kv.begin()->first);
    prm.validate();
    return prm;
}

TodaParams toda_params_from(const std::string& example, std::map<std::string, std::string> kv) {
    TodaParams prm;
    if (example == "ex1") prm = TodaParams::ex1_default();
    else if (example == "ex1c1") prm = TodaParams::ex1c1_default();
    else if (example == "ex2") prm = TodaParams::ex2_default();
    else if (example == "ex3") prm = TodaParams::ex3_default();
    else throw CLI::ValidationError("unknown example: " + example);
    if (auto it = kv.find("p"); it != kv.end()) prm.p = parse_complex(it->second), kv.erase(it);
    if (auto it = kv.find("D"); it != kv.end()) {
        if (example != "ex3") throw CLI::ValidationError("D is an ex3 parameter");
        prm = TodaParams::ex3_from_D(parse_real(it->second), prm.p);
        kv.erase(it);
    }
    if (auto it = kv.find("c"); it != kv.end()) prm.c = parse_real(it->second), kv.erase(it);
    if (auto it = kv.find("x0"); it != kv.end()) prm.x0 = parse_real(it->second), kv.erase(it);
    if (auto it = kv.find("k"); it != kv.end()) prm.k = parse_complex(it->second), kv.erase(it);
    if (auto it = kv.find("u0"); it != kv.end()) prm.u0_const = parse_complex(it->second), kv.erase(it);
    if (!kv.empty()) throw CLI::ValidationError("unknown parameter: " + kv.begin()->first);
    prm.validate();
    return prm;
}

Axis parse_axis(const std::string& spec) {
    std::vector<std::string> tok;
    std::stringstream ss(spec);
    std::string piece;
    while (std::getline(ss, piece, ':')) tok.push_back(piece);
    if (tok.size() != 4) throw CLI::ValidationError("--grid expects name:lo:hi:count, got: " + spec);
    Axis a;
    a.name = tok[0];
    a.lo = std::stod(tok[1]);
    a.hi = std::stod(tok[2]);
    a.count = std::stoi(tok[3]);
    return a;
}

std::array<int, 2> parse_window(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--n expects lo:hi, got: " + spec);
    const int lo = std::stoi(spec.substr(0, colon));
    const int hi = std::stoi(spec.substr(colon + 1));
    if (hi < lo) throw CLI::ValidationError("--n expects lo <= hi");
    return {lo, hi};
}

struct Sink {
    std::ofstream file;
    std::ostream* out = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw CLI::ValidationError("cannot open " + path);
        out = &file;
    }
};

bool is_pole_code(const std::string& code) {
    return code == "solution-pole" || code == "kernel-pole" || code == "branch-violation";
}

void write_pole_sidecar(const std::string& out_path, const ordered_json& poles) {
    if (out_path.empty()) {
        std::cerr << poles.dump(2) << "\n";
        return;
    }
    std::ofstream side(out_path + ".poles.json");
    side << poles.dump(2) << "\n";
}

/* ---- eval ------------------------------------------------------------ */

struct EvalOpts {
    std::string model = "kp";
    std::string example = "ex1";
    std::string stage = "seed";
    std::vector<std::string> params;
    std::vector<std::string> grid;
    std::string window = "-5:5";
    std::string format = "csv";
    std::string out;
};

GridSpec default_or_given(const std::vector<std::string>& given,
                          const std::vector<Axis>& defaults) {
    std::vector<Axis> axes = defaults;
    for (const auto& spec : given) {
        const Axis a = parse_axis(spec);
        bool known = false;
        for (auto& d : axes)
            if (d.name == a.name) d = a, known = true;
        if (!known) throw CLI::ValidationError("unknown grid axis: " + a.name);
    }
    return make_grid(axes);
}

int run_eval(const EvalOpts& o) {
    const bool dressed = o.stage == "dressed";
    if (!dressed && o.stage != "seed") throw CLI::ValidationError("--stage must be seed or dressed");
    const bool json_out = o.format == "json";
    if (!json_out && o.format != "csv") throw CLI::ValidationError("--format must be csv or json");

    Sink sink;
    sink.open(o.out);
    ordered_json doc, poles = ordered_json::array();
    std::vector<std::string> columns;
    ordered_json rows = ordered_json::array();
    auto emit = [&](const std::vector<double>& row) {
        if (json_out) {
            rows.push_back(row);
            return;
        }
        std::string line;
        for (size_t i = 0; i < row.size(); ++i) line += (i ? "," : "") + fmt(row[i]);
        *sink.out << line << "\n";
    };

    if (o.model == "kp") {
        const KPParams prm = kp_params_from(parse_params(o.params));
        if (dressed) prm.validate_dressing();
        const GridSpec grid = default_or_given(
            o.grid, {{"x", -2.0, 2.0, 21}, {"Y", -2.0, 2.0, 11}, {"T", 0.5, 2.0, 11}});
        columns = {"x", "Y", "T", "u_re", "u_im", "w_re", "w_im"};
        if (dressed) columns.insert(columns.end(), {"tau_re", "tau_im"});
        if (!json_out) {
            std::string hdr;
            for (size_t i = 0; i < columns.size(); ++i) hdr += (i ? "," : "") + columns[i];
            *sink.out << hdr << "\n";
        }
        for (long i = 0; i < grid.total(); ++i) {
            const Point pt = grid.point(i);
            try {
                if (dressed) {
                    const KPDressed v = kp_dressed(pt, prm);
                    emit({pt[0], pt[1], pt[2], v.u.real(), v.u.imag(), v.w.real(), v.w.imag(),
                          v.tau.real(), v.tau.imag()});
                } else {
                    const KPSeed v = kp_seed(pt, prm);
                    emit({pt[0], pt[1], pt[2], v.u.real(), v.u.imag(), v.w.real(), v.w.imag()});
                }
            } catch (const EvalError& e) {
                if (!is_pole_code(e.code())) throw;
                poles.push_back({{"x", pt[0]}, {"Y", pt[1]}, {"T", pt[2]}, {"code", e.code()}});
            }
        }
    } else if (o.model == "toda") {
        const TodaParams prm = toda_params_from(o.example, parse_params(o.params));
        if (dressed) prm.validate_dressing();
        const GridSpec grid =
            default_or_given(o.grid, {{"X", 0.5, 2.5, 11}, {"Y", 0.5, 2.5, 11}});
        const auto [n_lo, n_hi] = parse_window(o.window);
        const LatticeFn u = toda_seed_fn_or_dressed(prm, dressed);
        columns = {"X", "Y", "n", "u_re", "u_im"};
        if (!json_out) *sink.out << "X,Y,n,u_re,u_im\n";
        for (long i = 0; i < grid.total(); ++i) {
            const Point pt = grid.point(i);
            for (int n = n_lo; n <= n_hi; ++n) {
                try {
                    const Cx v = u(pt[0], pt[1], n);
                    emit({pt[0], pt[1], static_cast<double>(n), v.real(), v.imag()});
                } catch (const EvalError& e) {
                    if (!is_pole_code(e.code())) throw;
                    poles.push_back(
                        {{"X", pt[0]}, {"Y", pt[1]}, {"n", n}, {"code", e.code()}});
                }
            }
        }
    } else {
        throw CLI::ValidationError("--model must be kp or toda");
    }

    if (json_out) {
        doc["model"] = o.model;
        if (o.model == "toda") doc["example"] = o.example;
        doc["stage"] = o.stage;
        doc["columns"] = columns;
        doc["rows"] = rows;
        doc["poles"] = poles;
        *sink.out << doc.dump(2) << "\n";
    } else if (!poles.empty()) {
        write_pole_sidecar(o.out, poles);
    }
    return poles.empty() ? 0 : kExitFail;
}

/* ---- verify ----------------------------------------------------------- */

struct VerifyOpts {
    std::vector<std::string> suites{"all"};
    std::string format = "text";
    std::string out;
    std::string config;
};

ordered_json outcome_json(const CheckOutcome& oc) {
    ordered_json j;
    j["name"] = oc.name;
    j["relation"] = oc.relation;
    j["pass"] = oc.pass;
    j["max_abs"] = oc.report.max_abs;
    j["rms"] = oc.report.rms;
    j["n_points"] = oc.report.n_points;
    j["threshold"] = oc.threshold;
    if (oc.require_min > 0.0) j["require_min"] = oc.require_min;
    if (oc.order_probed) {
        j["order"] = oc.order;
        j["order_at_floor"] = oc.order_at_floor;
    }
    if (oc.ratio > 0.0) j["ratio"] = oc.ratio;
    if (!oc.note.empty()) j["note"] = oc.note;
    return j;
}

int run_verify(const VerifyOpts& o) {
    std::vector<std::string> wanted = o.suites;
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw CLI::ValidationError("cannot open " + o.config);
        ordered_json prev = ordered_json::parse(in);
        wanted.clear();
        for (const auto& s : prev.at("suites")) wanted.push_back(s.at("name"));
    }
    std::vector<std::string> names;
    for (const auto& w : wanted) {
        if (w == "all") {
            const auto all = suite_names();
            names.insert(names.end(), all.begin(), all.end());
        } else {
            names.push_back(w);
        }
    }

    Sink sink;
    sink.open(o.out);
    bool all_pass = true;
    double seconds = 0.0;
    ordered_json doc, jsuites = ordered_json::array();
    for (const auto& name : names) {
        const SuiteOutcome so = run_named_suite(name);
        all_pass = all_pass && so.pass;
        seconds += so.seconds;
        if (o.format == "json") {
            ordered_json js;
            js["name"] = so.name;
            js["pass"] = so.pass;
            js["seconds"] = so.seconds;
            js["checks"] = ordered_json::array();
            for (const auto& oc : so.outcomes) js["checks"].push_back(outcome_json(oc));
            jsuites.push_back(js);
        } else {
            char head[160];
            std::snprintf(head, sizeof(head), "%-16s %s  (%.2fs)", so.name.c_str(),
                          so.pass ? "PASS" : "FAIL", so.seconds);
            *sink.out << head << "\n";
            for (const auto& oc : so.outcomes) {
                char line[320];
                std::snprintf(line, sizeof(line), "  %-44s %s  %s", oc.name.c_str(),
                              oc.pass ? "pass" : "FAIL", oc.note.c_str());
                *sink.out << line << "\n";
            }
        }
    }
    if (o.format == "json") {
        doc["pass"] = all_pass;
        doc["seconds"] = seconds;
        doc["suites"] = jsuites;
        *sink.out << doc.dump(2) << "\n";
    } else {
        char tail[120];
        std::snprintf(tail, sizeof(tail), "%s in %.2fs", all_pass ? "PASS" : "FAIL", seconds);
        *sink.out << tail << "\n";
    }
    return all_pass ? 0 : kExitFail;
}

/* ---- contour ----------------------------------------------------------- */

struct ContourOpts {
    std::string model = "kp";
    std::string example = "ex1";
    std::string stage = "seed";
    std::vector<std::string> params;
    int points = 100;
    double x = 0.0;
    std::string range;
    std::string window = "-5:5";
    double h = 1e-3;
    std::string out;
};

std::array<double, 2> default_contour_range(const std::string& model, TodaExample e) {
    if (model == "kp") return {0.5, 2.0};
    switch (e) {
        case TodaExample::ex1: return {0.6, 1.4};
        case TodaExample::ex1c1: return {0.4, 0.55};
        case TodaExample::ex2: return {0.5, 1.0};
        case TodaExample::ex3: return {0.3, 0.7};
    }
    return {0.5, 1.0};
}

int run_contour(const ContourOpts& o) {
    const bool dressed = o.stage == "dressed";
    if (!dressed && o.stage != "seed") throw CLI::ValidationError("--stage must be seed or dressed");
    if (o.points < 1) throw CLI::ValidationError("--points must be >= 1");
    Sink sink;
    sink.open(o.out);

    if (o.model == "kp") {
        const KPParams prm = kp_params_from(parse_params(o.params));
        if (dressed) prm.validate_dressing();
        const FieldPair fields = dressed ? kp_dressed_fields(prm) : kp_seed_fields(prm);
        auto range = default_contour_range("kp", TodaExample::ex1);
        if (!o.range.empty()) {
            const Axis a = parse_axis("t:" + o.range + ":0");
            range = {a.lo, a.hi};
        }
        const Axis t_axis{"t", range[0], range[1], o.points};
        *sink.out << "t,x,Y,T,res_re,res_im\n";
        for (int i = 0; i < o.points; ++i) {
            const double t = t_axis.at(i);
            const TransformPoint tp = hyperbolic_transform(prm.y0, t);
            const Cx r = kp_boundary_residual({o.x, tp.Y, tp.T}, fields, prm);
            *sink.out << fmt(t) << "," << fmt(o.x) << "," << fmt(tp.Y) << "," << fmt(tp.T) << ","
                      << fmt(r.real()) << "," << fmt(r.imag()) << "\n";
        }
        return 0;
    }
    if (o.model != "toda") throw CLI::ValidationError("--model must be kp or toda");

    const TodaParams prm = toda_params_from(o.example, parse_params(o.params));
    if (dressed) prm.validate_dressing();
    const LatticeFn u = toda_seed_fn_or_dressed(prm, dressed);
    const LatticePartials parts = toda_seed_partials(prm);
    auto range = default_contour_range("toda", prm.example);
    if (!o.range.empty()) {
        const Axis a = parse_axis("s:" + o.range + ":0");
        range = {a.lo, a.hi};
    }
    const auto [n_lo, n_hi] = parse_window(o.window);
    const Axis s_axis{"s", range[0], range[1], o.points};
    const double D = prm.D();
    *sink.out << "s,X,Y,n,res_re,res_im\n";
    for (int i = 0; i < o.points; ++i) {
        const double s = s_axis.at(i);
        double X, Y;
        if (prm.example == TodaExample::ex2) {
            X = std::sin(s);
            Y = prm.c * std::cos(s);
        } else if (prm.example == TodaExample::ex3) {
            X = s;
            Y = D * s;
        } else {
            X = s;
            Y = D / std::pow(X, prm.c);
        }
        for (int n = n_lo; n <= n_hi; ++n) {
            const Cx r = toda_boundary_residual(prm, X, Y, n, u, o.h,
                                                dressed ? nullptr : &parts);
            *sink.out << fmt(s) << "," << fmt(X) << "," << fmt(Y) << "," << n << ","
                      << fmt(r.real()) << "," << fmt(r.imag()) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form boundary solutions with built-in numerical verification"};
    app.require_subcommand(1);

    EvalOpts eo;
    auto* eval = app.add_subcommand("eval", "sample a solution over a grid");
    eval->add_option("--model", eo.model, "kp | toda");
    eval->add_option("--example", eo.example, "toda family: ex1 | ex1c1 | ex2 | ex3");
    eval->add_option("--stage", eo.stage, "seed | dressed");
    eval->add_option("--param", eo.params, "key=value override (complex: 0.5+0.3i)");
    eval->add_option("--grid", eo.grid, "axis spec name:lo:hi:count");
    eval->add_option("--n", eo.window, "lattice window lo:hi");
    eval->add_option("--format", eo.format, "csv | json");
    eval->add_option("--out", eo.out, "output file (default stdout)");

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "run built-in verification suites");
    verify->add_option("--suite", vo.suites, "suite name or 'all'");
    verify->add_option("--format", vo.format, "text | json");
    verify->add_option("--out", vo.out, "output file (default stdout)");
    verify->add_option("--config", vo.config, "re-run the suites named in a JSON report");

    ContourOpts co;
    auto* contour = app.add_subcommand("contour", "evaluate the boundary constraint on its contour");
    contour->add_option("--model", co.model, "kp | toda");
    contour->add_option("--example", co.example, "toda family: ex1 | ex1c1 | ex2 | ex3");
    contour->add_option("--stage", co.stage, "seed | dressed");
    contour->add_option("--param", co.params, "key=value override");
    contour->add_option("--points", co.points, "contour sample count");
    contour->add_option("--x", co.x, "transverse coordinate (kp)");
    contour->add_option("--range", co.range, "contour parameter range lo:hi");
    contour->add_option("--n", co.window, "lattice window lo:hi (toda)");
    contour->add_option("--step", co.h, "stencil step for dressed lattice partials");
    contour->add_option("--out", co.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (eval->parsed()) return run_eval(eo);
        if (verify->parsed()) return run_verify(vo);
        return run_contour(co);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    } catch (const EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
