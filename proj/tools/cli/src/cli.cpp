#include "arlog/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arlog/asymptotic.hpp"
#include "arlog/bigfloat.hpp"
#include "arlog/error.hpp"
#include "arlog/experiments.hpp"
#include "arlog/parallel.hpp"
#include "arlog/process.hpp"
#include "arlog/residual.hpp"
#include "json.hpp"

namespace arlog::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kMaxDigits = 40;

struct Options {
  std::string format = "json";
  std::string output;
  std::string rounding = "nearest";
  int digits = 20;
  std::uint64_t seed = 0;
  int threads = 0;

  std::string rho;
  std::string theta;
  std::string x;
  std::string p;
  std::int64_t n = 0;
  std::int64_t reps = 1;

  std::string model;
  std::string coeffs;
  std::string scale = "1";
  std::string noise = "gaussian";
  std::string method = "recurrence";
  bool series = false;
  bool values = false;

  std::optional<double> tolerance;
  double alpha = 0.01;
  double skewness_tolerance = 0.05;
  int grid = 41;
  double band = 1e-6;
};

Rounding rounding_of(const Options& o) {
  return o.rounding == "truncate" ? Rounding::kTruncate : Rounding::kNearestEven;
}

std::string fixed(const BigFloat& v, const Options& o) { return v.to_fixed(o.digits, rounding_of(o)); }

// Strict decimal parse: the text must satisfy the BigFloat grammar.
double parse_real(const std::string& text, const char* what) {
  try {
    return BigFloat::parse(text, 40).to_double();
  } catch (const DomainError&) {
    throw DomainError(std::string("invalid ") + what + ": " + text);
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, "coefficient"));
  if (out.empty()) throw DomainError("empty coefficient list");
  return out;
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string csv_field(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Flat record: one header row and one value row in CSV.
std::string render_record(const Json& record, const std::string& format) {
  if (format == "json") return record.dump(2) + "\n";
  std::string header, row;
  for (auto it = record.begin(); it != record.end(); ++it) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += csv_field(it.key());
    row += csv_field(it.value());
  }
  return header + "\n" + row + "\n";
}

struct ModelFlags {
  CLI::Option* rho = nullptr;
  CLI::Option* coeffs = nullptr;
  CLI::Option* scale = nullptr;
  CLI::Option* noise = nullptr;
};

sim::ModelSpec build_model(const Options& o, const ModelFlags& flags) {
  const auto kind = sim::parse_model_kind(o.model);
  const bool wants_rho = kind == sim::ModelKind::kStationaryAr1 || kind == sim::ModelKind::kNonstationaryAr1 ||
                         kind == sim::ModelKind::kRandomSign;
  const bool wants_noise = kind == sim::ModelKind::kStationaryAr1 || kind == sim::ModelKind::kArM;
  const bool is_arm = kind == sim::ModelKind::kArM;
  auto reject = [&](CLI::Option* opt, bool used) {
    if (opt && opt->count() > 0 && !used) {
      throw DomainError(opt->get_name() + " is not used by model " + o.model);
    }
  };
  reject(flags.rho, wants_rho);
  reject(flags.noise, wants_noise);
  reject(flags.coeffs, is_arm);
  reject(flags.scale, is_arm);
  if (wants_rho && o.rho.empty()) throw DomainError("--rho is required for model " + o.model);
  if (is_arm && o.coeffs.empty()) throw DomainError("--coeffs is required for model ar-m");

  const auto noise = sim::parse_noise_kind(o.noise);
  switch (kind) {
    case sim::ModelKind::kStationaryAr1: return sim::ModelSpec::stationary_ar1(parse_real(o.rho, "rho"), noise);
    case sim::ModelKind::kNonstationaryAr1: return sim::ModelSpec::nonstationary_ar1(parse_real(o.rho, "rho"));
    case sim::ModelKind::kArM:
      return sim::ModelSpec::ar_m(parse_list(o.coeffs), parse_real(o.scale, "scale"), noise);
    case sim::ModelKind::kRandomSign: return sim::ModelSpec::random_sign(parse_real(o.rho, "rho"));
    case sim::ModelKind::kViswanath: return sim::ModelSpec::viswanath();
    case sim::ModelKind::kWrightTrefethen: return sim::ModelSpec::wright_trefethen();
  }
  throw DomainError("unknown model");
}

Json model_params(const Options& o, const sim::ModelSpec& model) {
  Json params;
  params["model"] = std::string(model.name());
  switch (model.kind()) {
    case sim::ModelKind::kStationaryAr1:
      params["rho"] = o.rho;
      params["noise"] = o.noise;
      break;
    case sim::ModelKind::kNonstationaryAr1:
    case sim::ModelKind::kRandomSign:
      params["rho"] = o.rho;
      break;
    case sim::ModelKind::kArM:
      params["coeffs"] = o.coeffs;
      params["scale"] = o.scale;
      params["noise"] = o.noise;
      break;
    default:
      break;
  }
  return params;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd m;
  if (xs.empty()) return {std::nan(""), std::nan("")};
  m.mean = pairwise_sum(xs) / static_cast<double>(xs.size());
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - m.mean) * (xs[i] - m.mean);
  m.std = std::sqrt(pairwise_sum(sq) / static_cast<double>(xs.size()));
  return m;
}

std::string run_simulate(const Options& o, const ModelFlags& flags) {
  const auto model = build_model(o, flags);
  if (o.n < 1) throw DomainError("n must be at least 1");
  if (o.reps < 1) throw DomainError("reps must be at least 1");
  if (o.series && o.reps != 1) throw DomainError("--series requires --reps 1");
  const auto method = o.method == "exact" ? sim::SamplingMethod::kExact : sim::SamplingMethod::kRecurrence;

  Json params = model_params(o, model);
  params["n"] = o.n;
  params["method"] = o.method;

  if (o.series) {
    if (method == sim::SamplingMethod::kExact) throw DomainError("--series needs the recurrence method");
    sim::RngState rng = sim::RngState::child(o.seed, 0);
    sim::SimOptions options;
    options.retain_series = true;
    const auto path = sim::simulate_ln_abs(model, o.n, rng, options);
    if (o.format == "csv") {
      std::string out = "t,ln_abs_x,sign\n";
      for (const auto& pt : path.series) {
        out += std::to_string(pt.t) + ',' + analysis::format_double(pt.ln_abs_x) + ',' + std::to_string(pt.sign) + '\n';
      }
      return out;
    }
    Json j;
    j["command"] = "simulate";
    j["params"] = params;
    j["seed"] = o.seed;
    j["reps"] = 1;
    j["log_of_zero"] = path.log_of_zero ? 1 : 0;
    j["ln_abs_final"] = number(path.ln_abs_final);
    Json series = Json::array();
    for (const auto& pt : path.series) series.push_back({{"t", pt.t}, {"ln_abs_x", number(pt.ln_abs_x)}, {"sign", pt.sign}});
    j["series"] = series;
    return j.dump(2) + "\n";
  }

  const auto finals = sim::sample_final_values(model, o.n, o.reps, o.seed, method, o.threads);
  const MeanStd ms = mean_std(finals.ln_abs);
  if (o.values && o.format == "csv") {
    std::string out = "index,ln_abs_final,sign\n";
    for (std::size_t i = 0; i < finals.ln_abs.size(); ++i) {
      out += std::to_string(i) + ',' + analysis::format_double(finals.ln_abs[i]) + ',' +
             std::to_string(finals.signs[i]) + '\n';
    }
    return out;
  }
  Json j;
  j["command"] = "simulate";
  j["params"] = params;
  j["seed"] = o.seed;
  j["reps"] = o.reps;
  j["log_of_zero"] = finals.log_of_zero;
  j["reps_used"] = finals.ln_abs.size();
  j["mean_ln_abs"] = number(ms.mean);
  j["std_ln_abs"] = number(ms.std);
  j["mean_rate"] = number(ms.mean / static_cast<double>(o.n));
  if (o.format == "csv") return render_record(j, "csv");
  if (o.values) {
    Json vals = Json::array();
    for (double v : finals.ln_abs) vals.push_back(number(v));
    j["ln_abs_final"] = vals;
    j["signs"] = finals.signs;
  }
  return j.dump(2) + "\n";
}

std::string render_report(const analysis::ExperimentReport& r, const Options& o) {
  return o.format == "csv" ? r.to_csv() : r.to_json();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Log-magnitude asymptotics of autoregressive processes", "arlog"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", o.output, "Write output to this file instead of stdout");

  auto digits = [&](CLI::App* sub) {
    sub->add_option("--digits", o.digits, "Decimals to print")->check(CLI::Range(1, kMaxDigits));
    sub->add_option("--rounding", o.rounding, "nearest (default) or truncate")
        ->check(CLI::IsMember({"nearest", "truncate"}));
  };
  auto seeded = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--threads", o.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  };
  auto model_flags = [&](CLI::App* sub, bool model_required) {
    ModelFlags f;
    auto* m = sub->add_option("--model", o.model, "Model name");
    if (model_required) m->required();
    f.rho = sub->add_option("--rho", o.rho, "Correlation / growth parameter (decimal)");
    f.coeffs = sub->add_option("--coeffs", o.coeffs, "AR(m) coefficients a1,...,am");
    f.scale = sub->add_option("--scale", o.scale, "AR(m) noise scale b");
    f.noise = sub->add_option("--noise", o.noise, "gaussian, uniform or rademacher");
    return f;
  };

  auto* constants = app.add_subcommand("constants", "High-precision constants")->require_subcommand(1);
  auto* c_xi = constants->add_subcommand("xi", "CLT constant xi_rho");
  c_xi->add_option("--rho", o.rho)->required();
  digits(c_xi);
  auto* c_eta = constants->add_subcommand("eta", "OU constant eta_theta");
  c_eta->add_option("--theta", o.theta)->required();
  digits(c_eta);
  auto* c_mu = constants->add_subcommand("mu-sigma", "Mean and standard deviation of ln|N(0,1)|");
  digits(c_mu);
  auto* c_fv = constants->add_subcommand("finite-var", "Variance of sqrt(n) times the mean of ln|X_t|");
  c_fv->add_option("--rho", o.rho)->required();
  c_fv->add_option("--n", o.n)->required();
  digits(c_fv);

  auto* dist = app.add_subcommand("dist", "Residual distribution")->require_subcommand(1);
  auto* d_pdf = dist->add_subcommand("pdf", "Density");
  d_pdf->add_option("--x", o.x)->required();
  digits(d_pdf);
  auto* d_cdf = dist->add_subcommand("cdf", "Distribution function");
  d_cdf->add_option("--x", o.x)->required();
  digits(d_cdf);
  auto* d_q = dist->add_subcommand("quantile", "Inverse distribution function");
  d_q->add_option("--p", o.p)->required();
  digits(d_q);
  auto* d_mom = dist->add_subcommand("moments", "Mean, variance, skewness, kurtosis");
  digits(d_mom);
  auto* d_mode = dist->add_subcommand("mode", "Location of the density maximum");
  digits(d_mode);

  auto* simulate = app.add_subcommand("simulate", "Simulate a recurrence");
  const ModelFlags sim_flags = model_flags(simulate, true);
  simulate->add_option("--n", o.n, "Steps")->required();
  simulate->add_option("--reps", o.reps, "Replicates");
  simulate->add_option("--method", o.method)->check(CLI::IsMember({"recurrence", "exact"}));
  simulate->add_flag("--series", o.series, "Emit the path ln|X_t|, t = 1..n (reps must be 1)");
  simulate->add_flag("--values", o.values, "Emit every replicate's ln|X_n|");
  seeded(simulate);

  auto* experiment = app.add_subcommand("experiment", "Verification experiments")->require_subcommand(1);
  auto* e_clt = experiment->add_subcommand("clt", "CLT scaling for stationary AR(1)");
  e_clt->add_option("--rho", o.rho);
  e_clt->add_option("--n", o.n);
  e_clt->add_option("--reps", o.reps);
  e_clt->add_option("--tolerance", o.tolerance, "Relative tolerance on the std");
  e_clt->add_option("--alpha", o.alpha);
  seeded(e_clt);
  auto* e_res = experiment->add_subcommand("residuals", "Residual law of explosive paths");
  const ModelFlags res_flags = model_flags(e_res, false);
  e_res->add_option("--n", o.n);
  e_res->add_option("--reps", o.reps);
  e_res->add_option("--alpha", o.alpha);
  e_res->add_option("--skewness-tolerance", o.skewness_tolerance);
  seeded(e_res);
  auto* e_lyap = experiment->add_subcommand("lyapunov", "Growth rate (1/n) ln|X_n|");
  const ModelFlags lyap_flags = model_flags(e_lyap, true);
  e_lyap->add_option("--n", o.n);
  e_lyap->add_option("--reps", o.reps);
  e_lyap->add_option("--tolerance", o.tolerance);
  seeded(e_lyap);
  auto* e_region = experiment->add_subcommand("ar2-region", "AR(2) explosive region vs eigenvalues");
  e_region->add_option("--grid", o.grid)->check(CLI::Range(2, 1001));
  e_region->add_option("--band", o.band);
  auto* e_marg = experiment->add_subcommand("marginal", "Long-run mean of ln|X_t| for stationary AR(1)");
  e_marg->add_option("--rho", o.rho);
  e_marg->add_option("--noise", o.noise);
  e_marg->add_option("--n", o.n);
  e_marg->add_option("--reps", o.reps);
  e_marg->add_option("--tolerance", o.tolerance);
  seeded(e_marg);

  auto fail = [&err](int code, const std::string& message) {
    err << Json{{"code", code}, {"message", message}}.dump() << "\n";
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    return fail(kInvalid, e.what());
  }

  auto flag_given = [](CLI::App* sub, const char* name) { return sub->get_option(name)->count() > 0; };

  int code = kOk;
  std::string text;
  try {
    const std::string fmt = o.format;
    auto record = [&](Json j) { text = render_record(j, fmt); };
    auto header = [&](const char* command) {
      Json j;
      j["command"] = command;
      return j;
    };

    if (c_xi->parsed()) {
      const auto rho = asym::StationaryRho::parse(o.rho);
      Json j = header("constants xi");
      j["rho"] = o.rho;
      j["digits"] = o.digits;
      j["rounding"] = o.rounding;
      j["value"] = fixed(asym::xi(rho, o.digits), o);
      record(j);
    } else if (c_eta->parsed()) {
      const auto theta = asym::OUTheta::parse(o.theta);
      Json j = header("constants eta");
      j["theta"] = o.theta;
      j["digits"] = o.digits;
      j["rounding"] = o.rounding;
      j["value"] = fixed(asym::eta(theta, o.digits), o);
      record(j);
    } else if (c_mu->parsed()) {
      const auto ms = asym::mu_sigma(o.digits);
      Json j = header("constants mu-sigma");
      j["digits"] = o.digits;
      j["rounding"] = o.rounding;
      j["mu"] = fixed(ms.mu, o);
      j["sigma"] = fixed(ms.sigma, o);
      record(j);
    } else if (c_fv->parsed()) {
      const auto rho = asym::StationaryRho::parse(o.rho);
      if (o.n < 1) throw DomainError("n must be at least 1");
      Json j = header("constants finite-var");
      j["rho"] = o.rho;
      j["n"] = o.n;
      j["digits"] = o.digits;
      j["rounding"] = o.rounding;
      j["value"] = fixed(asym::finite_n_variance(rho, o.n, o.digits), o);
      record(j);
    } else if (d_pdf->parsed() || d_cdf->parsed()) {
      const bool is_pdf = d_pdf->parsed();
      const BigFloat x = BigFloat::parse(o.x, o.digits + asym::kGuardDigits);
      Json j = header(is_pdf ? "dist pdf" : "dist cdf");
      j["x"] = o.x;
      j["digits"] = o.digits;
      j["rounding"] = o.rounding;
      j["value"] = fixed(is_pdf ? residual::pdf(x) : residual::cdf(x), o);
      record(j);
    } else if (d_q->parsed()) {
      const BigFloat p = BigFloat::parse(o.p, o.digits + asym::kGuardDigits);
      Json j = header("dist quantile");
      j["p"] = o.p;
      j["digits"] = o.digits;
      j["rounding"] = o.rounding;
      j["value"] = fixed(residual::quantile(p, o.digits), o);
      record(j);
    } else if (d_mom->parsed()) {
      const auto m = residual::moments(o.digits);
      Json j = header("dist moments");
      j["digits"] = o.digits;
      j["rounding"] = o.rounding;
      j["mean"] = fixed(m.mean, o);
      j["variance"] = fixed(m.variance, o);
      j["skewness"] = fixed(m.skewness, o);
      j["excess_kurtosis"] = fixed(m.excess_kurtosis, o);
      j["raw_fourth_moment"] = fixed(m.raw_fourth_moment, o);
      record(j);
    } else if (d_mode->parsed()) {
      Json j = header("dist mode");
      j["digits"] = o.digits;
      j["rounding"] = o.rounding;
      j["value"] = fixed(residual::mode(o.digits), o);
      record(j);
    } else if (simulate->parsed()) {
      text = run_simulate(o, sim_flags);
    } else {
      const analysis::RunControl run{o.seed, o.threads};
      std::optional<analysis::ExperimentReport> report;
      if (e_clt->parsed()) {
        analysis::CltConfig cfg;
        if (!o.rho.empty()) cfg.rho = o.rho;
        if (flag_given(e_clt, "--n")) cfg.n = o.n;
        if (flag_given(e_clt, "--reps")) cfg.reps = o.reps;
        if (o.tolerance) cfg.std_tolerance = *o.tolerance;
        cfg.alpha = o.alpha;
        report = analysis::clt_experiment(cfg, run);
      } else if (e_res->parsed()) {
        analysis::ResidualConfig cfg;
        if (o.model.empty()) {
          o.model = "nonstationary-ar1";
          if (o.rho.empty()) o.rho = "1.1";
        }
        cfg.model = build_model(o, res_flags);
        if (flag_given(e_res, "--n")) cfg.n = o.n;
        if (flag_given(e_res, "--reps")) cfg.reps = o.reps;
        cfg.alpha = o.alpha;
        cfg.skewness_tolerance = o.skewness_tolerance;
        report = analysis::residual_experiment(cfg, run);
      } else if (e_lyap->parsed()) {
        analysis::LyapunovConfig cfg;
        cfg.model = build_model(o, lyap_flags);
        if (flag_given(e_lyap, "--n")) cfg.n = o.n;
        if (flag_given(e_lyap, "--reps")) cfg.reps = o.reps;
        cfg.tolerance = o.tolerance;
        report = analysis::lyapunov_experiment(cfg, run);
      } else if (e_region->parsed()) {
        report = analysis::ar2_region_experiment({.grid = o.grid, .band = o.band});
      } else if (e_marg->parsed()) {
        analysis::MarginalConfig cfg;
        if (!o.rho.empty()) cfg.rho = o.rho;
        cfg.noise = flag_given(e_marg, "--noise") ? sim::parse_noise_kind(o.noise) : sim::NoiseKind::kUniformSym;
        if (flag_given(e_marg, "--n")) cfg.n = o.n;
        if (flag_given(e_marg, "--reps")) cfg.reps = o.reps;
        cfg.tolerance = o.tolerance;
        report = analysis::marginal_experiment(cfg, run);
      }
      text = render_report(*report, o);
      if (!report->passed()) code = kVerdictFailed;
    }
  } catch (const DomainError& e) {
    return fail(kInvalid, e.what());
  } catch (const ConvergenceError& e) {
    return fail(kNoConvergence, e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, e.what());
  }

  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!file) return fail(kInvalid, "cannot open output file: " + o.output);
    file << text;
    if (!file.flush()) return fail(kInternal, "failed writing output file: " + o.output);
  }
  return code;
}

}  // namespace arlog::cli
