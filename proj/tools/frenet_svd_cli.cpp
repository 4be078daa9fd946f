// frenet_svd_cli: coefficient tables, Hankel diagnostics, curvature and frame
// estimation for builtin or CSV curves, curve generation and self-validation.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance_checks.hpp"
#include "frenet_svd/frenet_svd.hpp"

namespace {

using namespace frenet_svd;
using json = nlohmann::ordered_json;
using HP = HighPrecision;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kTableDigits = 15;
constexpr int kCsvDigits = 17;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string table_number(double x) { return format_number(x, kTableDigits); }
std::string csv_number(double x) { return format_number(x, kCsvDigits); }

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    for (std::string_view field : split_fields(text)) values.push_back(parse_number(field, flag));
    return values;
}

/// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

// ---------------------------------------------------------------- coeffs

int cmd_coeffs(int max_j, const std::string& format, const std::string& out_path) {
    if (max_j < 0) throw UsageError("--max-j must be >= 0");
    Output out(out_path);
    std::ostream& os = out.stream();
    json rows = json::array();
    if (format == "table") os << "j  a_j  value\n";
    if (format == "csv") os << "j,a_j,value\n";
    for (int j = 1; j <= max_j; ++j) {
        const Rational a = hankel::curvature_coefficient(static_cast<std::size_t>(j));
        const double value = to_double(a);
        if (format == "table") os << j << "  " << to_string(a) << "  " << table_number(value) << '\n';
        if (format == "csv") os << j << ',' << to_string(a) << ',' << csv_number(value) << '\n';
        rows.push_back({{"j", j}, {"exact", to_string(a)}, {"value", value}});
    }
    if (format == "json") os << json{{"schema", 1}, {"command", "coeffs"}, {"coefficients", rows}}.dump(2) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- hankel

int cmd_hankel(int n, const std::string& alpha_text, const std::string& beta_text, const std::string& format,
               const std::string& out_path) {
    if (n < 1) throw UsageError("--n must be >= 1");
    const Rational alpha = parse_rational(alpha_text), beta = parse_rational(beta_text);
    if (alpha <= 0 || beta <= 0) throw UsageError("--alpha and --beta must be positive");

    const hankel::MomentSequence seq(alpha, beta, true);
    Output out(out_path);
    std::ostream& os = out.stream();
    json rows = json::array();
    bool all_pass = true;
    if (format == "table") os << "n  B_n  pivot  ratio_closed  ratio_oracle  status\n";
    if (format == "csv") os << "n,B_n,pivot,ratio_closed,ratio_oracle,status\n";

    std::vector<Rational> oracle{Rational(1)};
    for (int k = 1; k <= n; ++k) {
        const auto size = static_cast<std::size_t>(k);
        const Rational closed = hankel::hankel_b(size, alpha, beta);
        oracle.push_back(hankel::hankel_det_exact(seq, size));
        const Rational pivot = closed / hankel::hankel_b(size - 1, alpha, beta);
        std::string ratio_closed = "-", ratio_oracle = "-";
        bool pass = closed == oracle[size];
        if (k >= 2) {
            const Rational rc = hankel::interleaved_recursion_ratio(size, alpha, beta);
            const Rational ro = oracle[size] * oracle[size - 2] / (oracle[size - 1] * oracle[size - 1]);
            ratio_closed = to_string(rc);
            ratio_oracle = to_string(ro);
            pass = pass && rc == ro;
        }
        all_pass = all_pass && pass;
        const std::string status = pass ? "PASS" : "FAIL";
        if (format == "table")
            os << k << "  " << to_string(closed) << "  " << to_string(pivot) << "  " << ratio_closed << "  " << ratio_oracle << "  "
               << status << '\n';
        if (format == "csv")
            os << k << ',' << to_string(closed) << ',' << to_string(pivot) << ',' << ratio_closed << ',' << ratio_oracle << ','
               << status << '\n';
        json row{{"n", k}, {"B_n", to_string(closed)}, {"determinant", to_string(oracle[size])}, {"pivot", to_string(pivot)}};
        row["ratio_closed"] = k >= 2 ? json(ratio_closed) : json(nullptr);
        row["ratio_oracle"] = k >= 2 ? json(ratio_oracle) : json(nullptr);
        row["pass"] = pass;
        rows.push_back(row);
    }
    if (format == "json")
        os << json{{"schema", 1}, {"command", "hankel"}, {"alpha", to_string(alpha)}, {"beta", to_string(beta)},
                   {"rows", rows}, {"pass", all_pass}}
                  .dump(2)
           << '\n';
    return all_pass ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------- curve input

struct CurveSource {
    std::string label;
    std::optional<std::string> builtin;
    std::map<std::string, double> params;
    std::optional<SampledCurve> samples;
    int dim = 0;
};

/// `name`, `name:key=value,...` for builtins, otherwise a CSV path.
CurveSource load_curve(const std::string& spec) {
    CurveSource source;
    source.label = spec;
    const std::string name = spec.substr(0, spec.find(':'));
    const auto& names = builtin_curve_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) {
        source.builtin = name;
        if (name.size() < spec.size()) {
            for (std::string_view field : split_fields(std::string_view(spec).substr(name.size() + 1))) {
                const std::size_t eq = field.find('=');
                if (eq == std::string_view::npos || eq == 0)
                    throw UsageError("curve parameter '" + std::string(field) + "' is not key=value");
                source.params[std::string(field.substr(0, eq))] = parse_number(field.substr(eq + 1), "--curve");
            }
        }
        std::map<std::string, double> given = source.params;
        source.dim = make_builtin_curve<double>(name, given).curve.dim;
        return source;
    }
    std::ifstream in(spec);
    if (!in) throw UsageError("'" + spec + "' is neither a builtin curve (" + [&] {
        std::string list;
        for (const std::string& n : names) list += (list.empty() ? "" : ", ") + n;
        return list;
    }() + ") nor a readable CSV file");
    source.samples = read_csv(in);
    source.samples->validate();
    source.dim = source.samples->dim;
    return source;
}

template <typename Scalar>
BuiltinCurve<Scalar> builtin_for(const CurveSource& source) {
    std::map<std::string, Scalar> given;
    for (const auto& [k, v] : source.params) given[k] = Scalar(v);
    return make_builtin_curve<Scalar>(*source.builtin, given);
}

double median_spacing(const SampledCurve& s) {
    std::vector<double> gaps;
    for (std::size_t k = 1; k < s.size(); ++k) gaps.push_back(s.t[k] - s.t[k - 1]);
    if (gaps.empty()) throw Error(ErrorCode::TooFewSamples, "curve has fewer than 2 samples");
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2), gaps.end());
    return gaps[gaps.size() / 2];
}

// ---------------------------------------------------------------- estimate

struct EstimateConfig {
    std::vector<double> t_values;
    std::optional<double> eps;
    int rungs = kDefaultLadderRungs;
    int quad_order = kDefaultQuadratureOrder;
    std::string precision = "extended";
    std::string format = "table";
};

template <typename Scalar>
json estimate_at(const CurveSource& source, double t, const std::vector<double>& ladder, int quad_order) {
    using std::acos;
    using std::abs;
    CurvatureEstimate<Scalar> est;
    std::optional<Matrix<Scalar>> reference_frame;
    std::optional<Vector<Scalar>> reference_kappa;
    if (source.builtin) {
        const Curve<Scalar> curve = builtin_for<Scalar>(source).curve;
        est = estimate_curvatures(curve, Scalar(t), std::vector<Scalar>(ladder.begin(), ladder.end()), quad_order);
        const Matrix<Scalar> derivatives = curve.derivative_matrix(Scalar(t), curve.dim);
        reference_frame = gram_schmidt_frame(derivatives);
        reference_kappa = curvatures_from_derivatives(derivatives);
    } else {
        est = estimate_curvatures<Scalar>(*source.samples, t, ladder);
    }

    // Frame from the smallest radius, signs aligned with the exact frame when known.
    Matrix<Scalar> frame = est.spectrum.eigenvectors.back();
    if (reference_frame)
        for (Eigen::Index i = 0; i < frame.cols(); ++i)
            if (frame.col(i).dot(reference_frame->col(i)) < 0) frame.col(i) = -frame.col(i);

    json row{{"t", t}};
    json kappa = json::array(), reliable = json::array(), vectors = json::array(), coefficients = json::array();
    for (Eigen::Index j = 0; j < est.kappa.size(); ++j) {
        const double k = to_double(est.kappa[j]);
        kappa.push_back(std::isfinite(k) ? json(k) : json(nullptr));
        reliable.push_back(static_cast<bool>(est.reliable[static_cast<std::size_t>(j)]));
    }
    for (Eigen::Index i = 0; i < frame.cols(); ++i) {
        json v = json::array();
        for (Eigen::Index r = 0; r < frame.rows(); ++r) v.push_back(to_double(frame(r, i)));
        vectors.push_back(v);
        coefficients.push_back(to_double(est.spectrum.coefficients[i]));
    }
    row["kappa"] = kappa;
    row["reliable"] = reliable;
    row["frame"] = vectors;
    row["coefficients"] = coefficients;
    json eigenvalues = json::array();
    for (const Vector<Scalar>& lambda : est.spectrum.eigenvalues) {
        json l = json::array();
        for (Eigen::Index i = 0; i < lambda.size(); ++i) l.push_back(to_double(lambda[i]));
        eigenvalues.push_back(l);
    }
    row["eigenvalues"] = eigenvalues;
    if (reference_kappa) {
        json ref = json::array(), angles = json::array();
        for (Eigen::Index j = 0; j < reference_kappa->size(); ++j) ref.push_back(to_double((*reference_kappa)[j]));
        for (Eigen::Index i = 0; i < frame.cols(); ++i) {
            Scalar c = abs(Scalar(frame.col(i).dot(reference_frame->col(i))));
            if (c > 1) c = 1;
            angles.push_back(to_double(Scalar(acos(c))));
        }
        row["reference_kappa"] = ref;
        row["frame_angle_rad"] = angles;
    }
    return row;
}

int cmd_estimate(const CurveSource& source, const EstimateConfig& config, const std::string& out_path) {
    if (config.t_values.empty()) throw UsageError("--t needs at least one value");
    if (config.rungs < 1) throw UsageError("--ladder must be >= 1");
    if (config.quad_order < 1) throw UsageError("--quad-order must be >= 1");
    if (config.eps && !(*config.eps > 0)) throw UsageError("--eps must be positive");
    const double eps0 =
        config.eps ? *config.eps : (source.samples ? 100 * median_spacing(*source.samples) : kDefaultLadderStart);
    const std::vector<double> ladder = make_ladder(eps0, config.rungs);

    json results = json::array();
    for (double t : config.t_values) {
        try {
            results.push_back(config.precision == "double" ? estimate_at<double>(source, t, ladder, config.quad_order)
                                                           : estimate_at<HP>(source, t, ladder, config.quad_order));
        } catch (const Error& e) {
            throw Error(e.code(), e.message() + " (at t = " + table_number(t) + ")");
        }
    }

    Output out(out_path);
    std::ostream& os = out.stream();
    if (config.format == "json") {
        json ladder_json = json::array();
        for (double e : ladder) ladder_json.push_back(e);
        os << json{{"schema", 1},
                   {"command", "estimate"},
                   {"curve", source.label},
                   {"dim", source.dim},
                   {"precision", config.precision},
                   {"eps_ladder", ladder_json},
                   {"quad_order", config.quad_order},
                   {"results", results}}
                  .dump(2)
           << '\n';
        return kExitOk;
    }
    if (config.format == "csv") {
        os << "t,j,kappa,reliable,reference\n";
        for (const json& r : results)
            for (std::size_t j = 0; j < r["kappa"].size(); ++j) {
                os << csv_number(r["t"].get<double>()) << ',' << j + 1 << ','
                   << (r["kappa"][j].is_null() ? "nan" : csv_number(r["kappa"][j].get<double>())) << ','
                   << (r["reliable"][j].get<bool>() ? 1 : 0) << ','
                   << (r.contains("reference_kappa") ? csv_number(r["reference_kappa"][j].get<double>()) : "") << '\n';
            }
        return kExitOk;
    }
    os << "curve " << source.label << " (R^" << source.dim << "), eps ladder";
    for (double e : ladder) os << ' ' << table_number(e);
    os << ", " << config.precision << " precision\n";
    for (const json& r : results) {
        os << "t = " << table_number(r["t"].get<double>()) << '\n';
        for (std::size_t j = 0; j < r["kappa"].size(); ++j) {
            os << "  kappa_" << j + 1 << " = "
               << (r["kappa"][j].is_null() ? std::string("nan") : table_number(r["kappa"][j].get<double>()));
            if (r.contains("reference_kappa")) os << "  (exact " << table_number(r["reference_kappa"][j].get<double>()) << ")";
            if (!r["reliable"][j].get<bool>()) os << "  UNRELIABLE";
            os << '\n';
        }
        for (std::size_t i = 0; i < r["frame"].size(); ++i) {
            os << "  u_" << i + 1 << " = (";
            for (std::size_t k = 0; k < r["frame"][i].size(); ++k) os << (k ? ", " : "") << table_number(r["frame"][i][k].get<double>());
            os << ')';
            if (r.contains("frame_angle_rad")) os << "  angle to e_" << i + 1 << " = " << table_number(r["frame_angle_rad"][i].get<double>()) << " rad";
            os << '\n';
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- frenet

int cmd_frenet(const CurveSource& source, const std::vector<double>& t_values, const std::string& format, const std::string& out_path) {
    if (!source.builtin) throw UsageError("frenet needs a builtin curve (derivatives are required)");
    if (t_values.empty()) throw UsageError("--t needs at least one value");
    const BuiltinCurve<double> b = builtin_for<double>(source);
    json results = json::array();
    for (double t : t_values) {
        const FrenetApparatus<double> f = frenet_apparatus(b.curve, t);
        const Vector<double> exact = curvatures_from_derivatives(b.curve.derivative_matrix(t, b.curve.dim));
        json frame = json::array(), kappa = json::array(), residual = json::array();
        for (Eigen::Index i = 0; i < f.frame.cols(); ++i) {
            json v = json::array();
            for (Eigen::Index r = 0; r < f.frame.rows(); ++r) v.push_back(f.frame(r, i));
            frame.push_back(v);
        }
        for (Eigen::Index j = 0; j < f.curvatures.size(); ++j) {
            kappa.push_back(f.curvatures[j]);
            residual.push_back(exact[j]);
        }
        results.push_back({{"t", t}, {"frame", frame}, {"kappa", kappa}, {"kappa_residual_route", residual}});
    }
    Output out(out_path);
    std::ostream& os = out.stream();
    if (format == "json") {
        os << json{{"schema", 1}, {"command", "frenet"}, {"curve", source.label}, {"dim", source.dim}, {"results", results}}.dump(2)
           << '\n';
    } else if (format == "csv") {
        os << "t,j,kappa,kappa_residual_route\n";
        for (const json& r : results)
            for (std::size_t j = 0; j < r["kappa"].size(); ++j)
                os << csv_number(r["t"].get<double>()) << ',' << j + 1 << ',' << csv_number(r["kappa"][j].get<double>()) << ','
                   << csv_number(r["kappa_residual_route"][j].get<double>()) << '\n';
    } else {
        for (const json& r : results) {
            os << "t = " << table_number(r["t"].get<double>()) << '\n';
            for (std::size_t j = 0; j < r["kappa"].size(); ++j)
                os << "  kappa_" << j + 1 << " = " << table_number(r["kappa"][j].get<double>()) << "  (residual route "
                   << table_number(r["kappa_residual_route"][j].get<double>()) << ")\n";
            for (std::size_t i = 0; i < r["frame"].size(); ++i) {
                os << "  e_" << i + 1 << " = (";
                for (std::size_t k = 0; k < r["frame"][i].size(); ++k) os << (k ? ", " : "") << table_number(r["frame"][i][k].get<double>());
                os << ")\n";
            }
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- generate

int cmd_generate(std::optional<int> dim, const std::string& kappa_text, const std::string& range_text, double step,
                 const std::string& out_path) {
    const std::vector<double> kappa = parse_list(kappa_text, "--kappa");
    for (double k : kappa)
        if (!(k > 0)) throw UsageError("--kappa entries must be positive");
    const int n = dim ? *dim : static_cast<int>(kappa.size()) + 1;
    if (n < 2 || static_cast<int>(kappa.size()) != n - 1)
        throw UsageError("--kappa needs dim-1 = " + std::to_string(n - 1) + " entries, got " + std::to_string(kappa.size()));
    const std::vector<double> range = parse_list(range_text, "--range");
    if (range.size() != 2 || !(range[1] > range[0])) throw UsageError("--range must be 'begin,end' with begin < end");
    if (!(step > 0)) throw UsageError("--step must be positive");
    const FrenetTrajectory traj = integrate_frenet_system(n, constant_curvatures(kappa), Vector<double>::Zero(n),
                                                          Matrix<double>::Identity(n, n), range[0], range[1], step);
    Output out(out_path);
    write_csv(out.stream(), traj.curve);
    return kExitOk;
}

// ---------------------------------------------------------------- validate

int cmd_validate(bool fast, const std::string& fault, const std::string& format, const std::string& out_path) {
    acceptance::CheckOptions options;
    options.fast = fast;
    if (fault == "a2") options.injected_a2 = Rational(105, 4) + 1;
    else if (!fault.empty()) throw UsageError("unknown fault '" + fault + "'");
    const std::vector<acceptance::CheckResult> results = acceptance::run_acceptance(options);
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    Output out(out_path);
    std::ostream& os = out.stream();
    if (format == "json") {
        json checks = json::array();
        for (const auto& r : results)
            checks.push_back({{"id", r.id}, {"name", r.name}, {"status", r.skipped ? "skip" : (r.passed ? "pass" : "fail")}, {"detail", r.detail}});
        os << json{{"schema", 1}, {"command", "validate"}, {"fast", fast}, {"checks", checks}, {"pass", all}}.dump(2) << '\n';
    } else {
        for (const auto& r : results) os << acceptance::format_result(r) << '\n';
        os << (all ? "validate: all checks passed" : "validate: FAILED") << '\n';
    }
    return all ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frenet-Serret apparatus from local singular values"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"table", "csv", "json"};
    std::string format = "table", out_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));
        sub->add_option("--out", out_path, "Output path (default stdout)");
    };

    int max_j = 5;
    CLI::App* coeffs = app.add_subcommand("coeffs", "Curvature coefficients a_j");
    coeffs->add_option("--max-j", max_j, "Largest j");
    add_common(coeffs);

    int n = 5;
    std::string alpha = "2", beta = "3";
    CLI::App* hankel_cmd = app.add_subcommand("hankel", "Hankel determinant diagnostics");
    hankel_cmd->add_option("--n", n, "Largest dimension");
    hankel_cmd->add_option("--alpha", alpha, "alpha (rational, > 0)");
    hankel_cmd->add_option("--beta", beta, "beta (rational, > 0)");
    add_common(hankel_cmd);

    std::string curve_spec, t_text;
    std::optional<int> dim;
    std::optional<double> eps;
    EstimateConfig config;
    CLI::App* estimate = app.add_subcommand("estimate", "Estimate curvatures and frame from local covariance");
    estimate->add_option("--curve", curve_spec, "Builtin name[:key=value,...] or CSV path")->required();
    estimate->add_option("--t", t_text, "Comma-separated parameter values")->required();
    estimate->add_option("--eps", eps, "Largest window radius");
    estimate->add_option("--ladder", config.rungs, "Number of radii (ratio 1/2)");
    estimate->add_option("--quad-order", config.quad_order, "Gauss-Legendre order per half window");
    estimate->add_option("--dim", dim, "Expected dimension");
    estimate->add_option("--precision", config.precision, "Arithmetic for the estimator")
        ->check(CLI::IsMember({"double", "extended"}));
    add_common(estimate);

    CLI::App* frenet = app.add_subcommand("frenet", "Exact Frenet apparatus of a builtin curve");
    frenet->add_option("--curve", curve_spec, "Builtin name[:key=value,...]")->required();
    frenet->add_option("--t", t_text, "Comma-separated parameter values")->required();
    frenet->add_option("--dim", dim, "Expected dimension");
    add_common(frenet);

    std::string kappa_text, range_text = "0,10";
    double step = 1e-3;
    CLI::App* generate = app.add_subcommand("generate", "Integrate E' = EK for constant curvatures and write CSV");
    generate->add_option("--dim", dim, "Dimension (default: number of curvatures + 1)");
    generate->add_option("--kappa", kappa_text, "Comma-separated positive curvatures")->required();
    generate->add_option("--range", range_text, "Parameter range 'begin,end'");
    generate->add_option("--step", step, "RK4 step");
    generate->add_option("--out", out_path, "Output path (default stdout)");

    bool fast = false;
    std::string fault;
    CLI::App* validate = app.add_subcommand("validate", "Run the acceptance checks");
    validate->add_flag("--fast", fast, "Skip the ladder-based checks");
    validate->add_option("--inject-fault", fault)->group("");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (coeffs->parsed()) return cmd_coeffs(max_j, format, out_path);
        if (hankel_cmd->parsed()) return cmd_hankel(n, alpha, beta, format, out_path);
        if (generate->parsed()) return cmd_generate(dim, kappa_text, range_text, step, out_path);
        if (validate->parsed()) return cmd_validate(fast, fault, format, out_path);

        const CurveSource source = load_curve(curve_spec);
        if (dim && *dim != source.dim)
            throw UsageError("--dim " + std::to_string(*dim) + " does not match the curve dimension " + std::to_string(source.dim));
        config.t_values = parse_list(t_text, "--t");
        config.eps = eps;
        config.format = format;
        if (frenet->parsed()) return cmd_frenet(source, config.t_values, format, out_path);
        return cmd_estimate(source, config, out_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
