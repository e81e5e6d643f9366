#include "finitezone/job.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "finitezone/dubrovin.hpp"
#include "finitezone/error.hpp"
#include "finitezone/potential.hpp"

namespace fz {

using nlohmann::json;

namespace {

cplx parse_cplx(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string(what) + ": complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cplx> parse_cplx_list(const json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + " must be a list");
    std::vector<cplx> v;
    for (const auto& x : j) v.push_back(parse_cplx(x, what));
    return v;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx z : v) a.push_back(to_json(z));
    return a;
}

json to_json(const CVector& v) {
    json a = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(to_json(v[k]));
    return a;
}

json to_json(const CMatrix& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(CVector(m.row(i).transpose())));
    return a;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

void dump_value(std::ostream& os, const json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string end_pad(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{' << nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',' << nl;
                first = false;
                os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
                dump_value(os, it.value(), indent, depth + 1);
            }
            os << nl << end_pad << '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            // Short numeric arrays stay on one line.
            bool flat = j.size() <= 4;
            for (const auto& x : j) flat = flat && x.is_primitive();
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << (flat ? ", " : ",");
                if (!flat) os << nl << pad;
                dump_value(os, j[i], indent, depth + 1);
            }
            if (!flat) os << nl << end_pad;
            os << ']';
            return;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                os << "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << buf;
            return;
        }
        default: os << j.dump();
    }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
    std::ostringstream os;
    dump_value(os, j, indent, 0);
    return os.str();
}

JobConfig JobConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    JobConfig c;
    if (!j.contains("branch_points")) throw ConfigError("missing 'branch_points'");
    c.branch_points = parse_cplx_list(j["branch_points"], "branch_points");
    if (c.branch_points.size() % 2 == 0) throw ConfigError("need an odd number of branch points");
    if (j.contains("divisor")) {
        std::vector<DivisorSpec> d;
        if (!j["divisor"].is_array()) throw ConfigError("divisor must be a list");
        for (const auto& p : j["divisor"]) {
            if (!p.is_object() || !p.contains("E")) throw ConfigError("divisor entries are {\"E\": [re, im], \"sheet\": +-1}");
            const int sheet = get_or(p, "sheet", 1);
            if (sheet != 1 && sheet != -1) throw ConfigError("divisor sheet must be +1 or -1");
            d.push_back({parse_cplx(p["E"], "divisor E"), sheet});
        }
        c.divisor = d;
    }
    if (j.contains("z0")) {
        const json& z = j["z0"];
        // A flat pair of numbers is one complex entry (genus 1).
        if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number())
            c.z0 = std::vector<cplx>{parse_cplx(z, "z0")};
        else
            c.z0 = parse_cplx_list(z, "z0");
    }
    if (c.divisor && c.z0) throw ConfigError("give either 'divisor' or 'z0', not both");
    if (j.contains("claimed_class")) c.claimed_class = get_or<std::string>(j, "claimed_class", "");
    if (j.contains("x_range")) {
        const auto r = get_or<std::vector<double>>(j, "x_range", {});
        if (r.size() != 2 || !(r[1] > r[0])) throw ConfigError("x_range must be [x0, x1] with x1 > x0");
        c.x_range = std::pair{r[0], r[1]};
    }
    c.samples = get_or(j, "samples", c.samples);
    if (c.samples < 2) throw ConfigError("samples must be at least 2");
    if (j.contains("scan")) {
        const json& s = j["scan"];
        const auto re = get_or<std::vector<double>>(s, "re", {c.scan.re_min, c.scan.re_max});
        const auto im = get_or<std::vector<double>>(s, "im", {c.scan.im_min, c.scan.im_max});
        if (re.size() != 2 || im.size() != 2) throw ConfigError("scan re/im are [min, max]");
        c.scan = {re[0], re[1], im[0], im[1], get_or(s, "n_re", c.scan.n_re), get_or(s, "n_im", c.scan.n_im)};
        if (c.scan.n_re < 1 || c.scan.n_im < 1) throw ConfigError("scan resolution must be positive");
        c.scan_eps = get_or(s, "eps", c.scan_eps);
    }
    if (j.contains("floquet") && j["floquet"].contains("guesses"))
        c.floquet_guesses = parse_cplx_list(j["floquet"]["guesses"], "floquet guesses");
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        c.tol.quad_tol = get_or(t, "quad", c.tol.quad_tol);
        c.tol.ode_tol = get_or(t, "ode", c.tol.ode_tol);
        c.tol.root_tol = get_or(t, "root", c.tol.root_tol);
        c.tol.branch_factor = get_or(t, "branch_factor", c.tol.branch_factor);
    }
    try {
        c.tol.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    c.output_dir = get_or<std::string>(j, "output_dir", c.output_dir);
    return c;
}

json JobConfig::resolved() const {
    json j;
    j["branch_points"] = to_json(branch_points);
    if (divisor) {
        json d = json::array();
        for (const auto& p : *divisor) d.push_back({{"E", to_json(p.E)}, {"sheet", p.sheet}});
        j["divisor"] = d;
    }
    if (z0) j["z0"] = to_json(*z0);
    if (claimed_class) j["claimed_class"] = *claimed_class;
    if (x_range) j["x_range"] = {x_range->first, x_range->second};
    j["samples"] = samples;
    j["scan"] = {{"re", {scan.re_min, scan.re_max}},
                 {"im", {scan.im_min, scan.im_max}},
                 {"n_re", scan.n_re},
                 {"n_im", scan.n_im},
                 {"eps", scan_eps}};
    if (floquet_guesses) j["floquet"] = {{"guesses", to_json(*floquet_guesses)}};
    j["tolerances"] = {
        {"quad", tol.quad_tol}, {"ode", tol.ode_tol}, {"root", tol.root_tol}, {"branch_factor", tol.branch_factor}};
    j["output_dir"] = output_dir;
    return j;
}

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return JobConfig::from_json(j);
}

namespace {

struct Pipeline {
    const JobConfig& cfg;
    std::shared_ptr<const SpectralData> sd;
    std::optional<DivisorData> divisor;
    std::shared_ptr<const PotentialModel> model;
};

DivisorData make_divisor(const SpectralCurve& c, const std::vector<DivisorSpec>& specs) {
    DivisorData D;
    for (const auto& s : specs) {
        bool on_branch = false;
        for (cplx e : c.branch_points()) on_branch = on_branch || std::abs(s.E - e) <= 1e-12 * (1.0 + c.scale());
        D.points.push_back({s.E, on_branch ? cplx{0.0} : double(s.sheet) * std::sqrt(c.P(s.E))});
    }
    return D;
}

Pipeline spectral(const JobConfig& cfg) {
    return {cfg, std::make_shared<const SpectralData>(SpectralData::build(SpectralCurve(cfg.branch_points), cfg.tol.quad_tol)),
            std::nullopt, nullptr};
}

Pipeline with_model(const JobConfig& cfg) {
    Pipeline p = spectral(cfg);
    const int g = p.sd->curve.genus();
    CVector z0(g);
    if (cfg.z0) {
        if (static_cast<int>(cfg.z0->size()) != g) throw ConfigError("z0 must have genus entries");
        for (int k = 0; k < g; ++k) z0[k] = (*cfg.z0)[static_cast<std::size_t>(k)];
    } else if (cfg.divisor) {
        p.divisor = make_divisor(p.sd->curve, *cfg.divisor);
        validate_divisor(p.sd->curve, *p.divisor, cfg.tol.branch_factor);
        z0 = z0_from_divisor(*p.sd, riemann_constants(*p.sd, cfg.tol.quad_tol), *p.divisor, cfg.tol.quad_tol);
    } else if (g > 0) {
        throw ConfigError("potential jobs need 'divisor' or 'z0'");
    }
    p.model = std::make_shared<const PotentialModel>(p.sd, z0);
    return p;
}

std::pair<double, double> x_range(const Pipeline& p) {
    if (p.cfg.x_range) return *p.cfg.x_range;
    if (p.model && p.model->period()) return {0.0, *p.model->period()};
    return {-10.0, 10.0};
}

std::vector<double> samples(std::pair<double, double> r, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[i] = r.first + (r.second - r.first) * i / (n - 1);
    return xs;
}

std::optional<cplx> safe_u(const PotentialModel& m, double x) {
    try {
        return potential_u(m, x);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::OnThetaDivisor) return std::nullopt;
        throw;
    }
}

std::ofstream open_out(const JobConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = std::filesystem::path(cfg.output_dir) / name;
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write " + path.string());
    os << std::setprecision(17);
    return os;
}

void write_json(const JobConfig& cfg, const std::string& name, const json& j) {
    auto os = open_out(cfg, name);
    os << dump_json(j) << '\n';
}

json model_json(const Pipeline& p) {
    const auto& m = *p.model;
    const auto& pd = m.periods();
    json j;
    j["genus"] = m.genus();
    j["B"] = to_json(pd.B);
    j["U"] = to_json(pd.U);
    j["C"] = to_json(pd.C);
    j["z0"] = to_json(m.z0());
    j["symmetry_class"] = to_string(m.symmetry());
    if (!m.symmetry_diagnostic().empty()) j["symmetry_diagnostic"] = m.symmetry_diagnostic();
    j["smooth"] = m.smooth();
    j["smoothness_witness"] = {{"min_theta", m.witness().min_theta}, {"argmin", m.witness().argmin}};
    j["period"] = m.period() ? json(*m.period()) : json(nullptr);
    if (p.divisor) {
        json d = json::array();
        for (const auto& P : p.divisor->points) d.push_back({{"E", to_json(P.E)}, {"w", to_json(P.w)}});
        j["divisor"] = d;
    }
    return j;
}

int cmd_curve(const JobConfig& cfg, std::ostream& out) {
    const Pipeline p = spectral(cfg);
    const auto& sd = *p.sd;
    json j;
    j["genus"] = sd.curve.genus();
    j["kind"] = to_string(sd.structure.kind);
    j["n_ovals"] = sd.structure.n_ovals;
    j["mu"] = sd.reality.matches_target ? json(sd.reality.mu) : json(nullptr);
    j["reality_adapted"] = sd.reality.matches_target;
    if (!sd.structure.diagnostic.empty()) j["structure_diagnostic"] = sd.structure.diagnostic;
    if (!sd.reality.diagnostic.empty()) j["reality_diagnostic"] = sd.reality.diagnostic;
    j["B"] = to_json(sd.periods.B);
    j["U"] = to_json(sd.periods.U);
    j["C"] = to_json(sd.periods.C);
    j["normalization_residual"] = sd.periods.normalization_residual;
    j["config"] = cfg.resolved();
    out << "genus " << sd.curve.genus() << ", " << to_string(sd.structure.kind) << '\n' << dump_json(j) << '\n';
    write_json(cfg, "curve.json", j);
    return kExitOk;
}

int cmd_potential(const JobConfig& cfg, std::ostream& out) {
    const Pipeline p = with_model(cfg);
    auto os = open_out(cfg, "u.csv");
    os << "x,re_u,im_u\n";
    int gaps = 0;
    for (double x : samples(x_range(p), cfg.samples)) {
        const auto u = safe_u(*p.model, x);
        // Singular samples are written as gap markers.
        if (u) os << x << ',' << u->real() << ',' << u->imag() << '\n';
        else {
            os << x << ",nan,nan\n";
            ++gaps;
        }
    }
    json j = model_json(p);
    j["singular_samples"] = gaps;
    j["config"] = cfg.resolved();
    write_json(cfg, "model.json", j);
    out << "symmetry " << to_string(p.model->symmetry()) << ", " << (p.model->smooth() ? "smooth" : "singular") << '\n';
    return kExitOk;
}

struct Check {
    Check(std::string n, double v, double t) : name(std::move(n)), value(v), tolerance(t) {}
    std::string name;
    double value;
    double tolerance;
    bool skipped = false;
    std::string note;
    bool pass() const { return skipped || value <= tolerance; }
};

json check_json(const Check& c) {
    json j{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass()}};
    if (c.skipped) j["skipped"] = true;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

DivisorData divisor_of(const Pipeline& p) {
    return p.divisor ? *p.divisor : divisor_from_z0(*p.sd, p.model->z0(), p.cfg.tol.quad_tol);
}

int cmd_verify(const JobConfig& cfg, std::ostream& out) {
    const Pipeline p = with_model(cfg);
    const auto& m = *p.model;
    const auto range = x_range(p);
    const auto xs = samples(range, cfg.samples);
    const SymmetryClass cls = m.symmetry();
    const bool is_pt = cls == SymmetryClass::PT || cls == SymmetryClass::RealAndPT;
    const bool is_real = cls == SymmetryClass::Real || cls == SymmetryClass::RealAndPT;
    std::vector<Check> checks;

    if (cfg.claimed_class) {
        Check c{"claimed_class", *cfg.claimed_class == to_string(cls) ? 0.0 : 1.0, 0.0};
        c.note = "claimed " + *cfg.claimed_class + ", computed " + to_string(cls);
        checks.push_back(c);
    }
    const bool claims_pt = cfg.claimed_class && (*cfg.claimed_class == "PT" || *cfg.claimed_class == "RealAndPT");
    const bool claims_real = cfg.claimed_class && (*cfg.claimed_class == "Real" || *cfg.claimed_class == "RealAndPT");
    if (is_pt || claims_pt) {
        double r = 0.0;
        for (double x : xs) {
            const auto a = safe_u(m, x), b = safe_u(m, -x);
            if (a && b) r = std::max(r, std::abs(std::conj(*b) - *a));
        }
        checks.emplace_back("pt_residual", r, 1e-7);
    }
    if (is_real || claims_real) {
        double r = 0.0;
        for (double x : xs)
            if (const auto a = safe_u(m, x)) r = std::max(r, std::abs(a->imag()));
        Check c{"reality_residual", r, 1e-7};
        if (!m.smooth()) {
            c.skipped = true;
            c.note = "potential is singular";
        }
        checks.push_back(c);
    }
    {
        // Schrodinger residual at 10 deterministic random points.
        std::mt19937 rng(20240611);
        const double L = 1.0 + p.sd->curve.scale();
        std::uniform_real_distribution<double> e(-L, L), t(range.first, range.second);
        double worst = 0.0;
        int done = 0;
        for (int tries = 0; done < 10 && tries < 100; ++tries) {
            const cplx E{e(rng), e(rng)};
            const SheetPoint P{E, (tries % 2 ? 1.0 : -1.0) * std::sqrt(p.sd->curve.P(E))};
            const double x = t(rng), h = 1e-3;
            try {
                const auto ps = bloch_psi(m, P, std::vector<double>{x - 2 * h, x - h, x, x + h, x + 2 * h});
                const cplx d2 = (-ps[0] + 16.0 * ps[1] - 30.0 * ps[2] + 16.0 * ps[3] - ps[4]) / (12.0 * h * h);
                const double r = std::abs(-d2 + potential_u(m, x) * ps[2] - E * ps[2]) / std::max(1.0, std::abs(ps[2]));
                worst = std::max(worst, r);
                ++done;
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::DivisorPole && err.kind() != ErrorKind::OnThetaDivisor) throw;
            }
        }
        checks.emplace_back("schrodinger_residual", worst, 1e-5);
    }
    if (m.genus() > 0) {
        Check c{"dubrovin_trace", 0.0, 1e-6};
        if (!m.smooth()) {
            c.skipped = true;
            c.note = "potential is singular";
        } else {
            const double x1 = m.period() ? *m.period() : 2.0;
            const auto traj = dubrovin_flow(p.sd->curve, divisor_of(p), 0.0, x1, cfg.tol.ode_tol);
            for (int i = 0; i < 50; ++i) {
                const double x = x1 * i / 49.0;
                c.value = std::max(c.value, std::abs(trace_potential(traj.at(x), p.sd->curve) - potential_u(m, x)));
            }
        }
        checks.push_back(c);
    }

    bool ok = true;
    json arr = json::array();
    for (const auto& c : checks) {
        ok = ok && c.pass();
        arr.push_back(check_json(c));
        out << (c.pass() ? "PASS " : "FAIL ") << c.name << " " << c.value << " (tol " << c.tolerance << ")"
            << (c.skipped ? " skipped" : "") << '\n';
    }
    json j = model_json(p);
    j["checks"] = arr;
    j["pass"] = ok;
    j["config"] = cfg.resolved();
    write_json(cfg, "report.json", j);
    return ok ? kExitOk : kExitVerification;
}

int cmd_dubrovin(const JobConfig& cfg, std::ostream& out) {
    const Pipeline p = with_model(cfg);
    const int g = p.sd->curve.genus();
    if (g == 0) throw ConfigError("the Dubrovin flow needs genus >= 1");
    const DivisorData D = divisor_of(p);
    const auto range = x_range(p);
    std::optional<DubrovinTrajectory> fwd, bwd;
    if (range.second > 0.0) fwd = dubrovin_flow(p.sd->curve, D, 0.0, range.second, cfg.tol.ode_tol);
    if (range.first < 0.0) bwd = dubrovin_flow(p.sd->curve, D, 0.0, range.first, cfg.tol.ode_tol);
    auto os = open_out(cfg, "dubrovin.csv");
    os << "x";
    for (int j = 1; j <= g; ++j)
        os << ",re_gamma_" << j << ",im_gamma_" << j << ",re_w_" << j << ",im_w_" << j;
    os << ",re_u,im_u\n";
    for (double x : samples(range, cfg.samples)) {
        const DubrovinState s = x > 0.0 ? fwd->at(x) : x < 0.0 ? bwd->at(x) : DubrovinState{0.0, D.points};
        os << x;
        for (const auto& P : s.points) os << ',' << P.E.real() << ',' << P.E.imag() << ',' << P.w.real() << ',' << P.w.imag();
        const cplx u = trace_potential(s, p.sd->curve);
        os << ',' << u.real() << ',' << u.imag() << '\n';
    }
    out << "dubrovin trajectory written for x in [" << range.first << ", " << range.second << "]\n";
    return kExitOk;
}

PotentialFn evaluator(const Pipeline& p) {
    auto m = p.model;
    return [m](double x) { return potential_u(*m, x); };
}

bool periodic_or_report(const Pipeline& p, const std::string& file, std::ostream& out) {
    if (p.model->genus() == 0 || p.model->period()) return true;
    json j{{"applicable", false}, {"reason", "aperiodic: monodromy not applicable"}, {"config", p.cfg.resolved()}};
    write_json(p.cfg, file, j);
    out << "aperiodic: monodromy not applicable\n";
    return false;
}

// Genus 0 has no period; any positive length works for the constant potential.
double period_of(const Pipeline& p) { return p.model->period() ? *p.model->period() : 1.0; }

int cmd_floquet(const JobConfig& cfg, std::ostream& out) {
    const Pipeline p = with_model(cfg);
    if (!periodic_or_report(p, "floquet.json", out)) return kExitOk;
    if (!p.model->smooth()) throw Error(ErrorKind::OnThetaDivisor, "monodromy needs a smooth potential");
    const auto u = evaluator(p);
    const double T = period_of(p);
    auto os = open_out(cfg, "discriminant.csv");
    os << "re_E,im_E,re_r,im_r,det_error\n";
    double det = 0.0;
    for (int i = 0; i < cfg.scan.n_re; ++i) {
        const cplx E = cfg.scan.node(i, 0).real();
        const auto mr = monodromy(u, T, E, cfg.tol.ode_tol);
        det = std::max(det, mr.det_error);
        os << E.real() << ',' << E.imag() << ',' << mr.r.real() << ',' << mr.r.imag() << ',' << mr.det_error << '\n';
    }
    std::vector<cplx> guesses;
    if (cfg.floquet_guesses) guesses = *cfg.floquet_guesses;
    else
        for (cplx e : p.sd->curve.branch_points())
            guesses.push_back(e + 0.02 * p.sd->curve.min_separation() * std::exp(I * 0.7));
    const auto rec = recover_branch_points(u, T, guesses, cfg.tol.ode_tol);
    json j{{"applicable", true},
           {"period", T},
           {"simple_zeros", to_json(rec.simple)},
           {"double_zeros", to_json(rec.double_zeros)},
           {"failures", rec.failures},
           {"max_det_error", det},
           {"config", cfg.resolved()}};
    write_json(cfg, "floquet.json", j);
    out << rec.simple.size() << " simple zeros of r^2 - 1 recovered\n";
    return kExitOk;
}

int cmd_bloch(const JobConfig& cfg, std::ostream& out) {
    const Pipeline p = with_model(cfg);
    if (!periodic_or_report(p, "bloch.json", out)) return kExitOk;
    if (!p.model->smooth()) throw Error(ErrorKind::OnThetaDivisor, "Bloch scan needs a smooth potential");
    const auto scan = bloch_scan(evaluator(p), period_of(p), cfg.scan, cfg.scan_eps, cfg.tol.ode_tol);
    auto os = open_out(cfg, "bloch.csv");
    write_scan_csv(os, scan);
    for (const auto& e : scan.errors) out << "node " << e << '\n';
    out << "Bloch scan written (" << scan.abs_lambda.size() << " nodes)\n";
    return kExitOk;
}

}  // namespace

int run_job(const std::string& command, const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (command == "curve") return cmd_curve(cfg, out);
        if (command == "potential") return cmd_potential(cfg, out);
        if (command == "verify") return cmd_verify(cfg, out);
        if (command == "dubrovin") return cmd_dubrovin(cfg, out);
        if (command == "floquet") return cmd_floquet(cfg, out);
        if (command == "bloch") return cmd_bloch(cfg, out);
        err << "unknown command '" << command << "'\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return e.kind() == ErrorKind::InvalidInput ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace fz
