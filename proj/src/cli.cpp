#include "latdisc/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "latdisc/corpus.hpp"
#include "latdisc/discrepancy.hpp"
#include "latdisc/lattice.hpp"
#include "latdisc/metric_stats.hpp"
#include "latdisc/parallel.hpp"
#include "latdisc/parseval.hpp"
#include "latdisc/quadratic.hpp"

namespace latdisc::cli {

using nlohmann::ordered_json;

namespace {

BigInt parse_int(const std::string& s, const std::string& what, int base = 10) {
  if (s.empty()) throw ValidationError("empty " + what);
  BigInt z;
  const std::string body = s[0] == '-' || s[0] == '+' ? s.substr(1) : s;
  if (body.empty() || z.set_str(s[0] == '+' ? body : s, base) != 0) throw ValidationError("bad " + what + ": " + s);
  return z;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

ordered_json interval_json(const Interval& x) { return ordered_json::array({x.lo, x.hi}); }

std::string csv_interval(const Interval& x) { return format_double(x.lo) + "," + format_double(x.hi); }

Weight parse_weight(const std::string& w) {
  if (w == "unit") return Weight::Unit;
  if (w == "quarter") return Weight::Quarter;
  if (w == "half") return Weight::Half;
  if (w == "eighth") return Weight::Eighth;
  if (w == "linear") return Weight::LinearPi2;
  throw ValidationError("unknown weight: " + w);
}

Variant parse_variant(const std::string& v) {
  if (v == "S" || v == "s") return Variant::S;
  if (v == "L" || v == "l") return Variant::L;
  throw ValidationError("variant must be S or L: " + v);
}

struct Globals {
  std::string out = "csv";
  std::uint64_t seed = 1;
  unsigned bits = kDefaultBits;
  int threads = 0;

  bool json() const { return out == "json"; }
};

void emit_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void emit(std::ostream& out, const Globals& g, const ordered_json& j, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows) {
  if (g.json()) {
    out << j.dump(2) << "\n";
  } else {
    emit_csv(out, header, rows);
  }
}

ordered_json sweep_summary(const SweepResult& r, double threshold) {
  ordered_json s;
  s["n"] = r.items.size();
  s["ks"] = r.ks;
  s["threshold"] = threshold;
  s["pass"] = r.ks <= threshold;
  s["resampled"] = r.resampled;
  s["excluded"] = r.excluded;
  return s;
}

void emit_sweep(std::ostream& out, std::ostream& err, const Globals& g, const SweepResult& r, double threshold,
                const std::string& summary_path) {
  const ordered_json summary = sweep_summary(r, threshold);
  if (g.json()) {
    ordered_json j;
    j["items"] = ordered_json::array();
    for (const auto& it : r.items) {
      j["items"].push_back({{"id", it.id},
                            {"q_or_seed", it.q_or_seed},
                            {"stat", it.stat},
                            {"estimator", to_string(it.estimator)},
                            {"enclosure_width", it.enclosure_width}});
    }
    j["summary"] = summary;
    out << j.dump(2) << "\n";
  } else {
    out << "id,q_or_seed,stat,estimator,enclosure_width\n";
    for (const auto& it : r.items) {
      out << it.id << "," << it.q_or_seed << "," << format_double(it.stat) << "," << to_string(it.estimator) << ","
          << format_double(it.enclosure_width) << "\n";
    }
  }
  if (!summary_path.empty()) {
    std::ofstream f(summary_path);
    if (!f) throw ValidationError("cannot write " + summary_path);
    f << summary.dump(2) << "\n";
  } else if (!g.json()) {
    err << summary.dump() << "\n";
  }
}

}  // namespace

AlphaSpec AlphaSpec::parse(const std::string& s) {
  AlphaSpec a;
  if (s.rfind("surd:", 0) == 0) {
    const auto parts = split(s.substr(5), ',');
    if (parts.size() != 3) throw ValidationError("surd spec needs P,D,Q: " + s);
    a.kind = Kind::Surd;
    a.P = parse_int(parts[0], "P");
    a.D = parse_int(parts[1], "D");
    a.Q = parse_int(parts[2], "Q");
    QuadraticSurd::make(a.P, a.D, a.Q);
    return a;
  }
  if (s.rfind("rule:", 0) == 0) {
    a.kind = Kind::Rule;
    a.rule = s.substr(5);
    cf_rule(a.rule);
    return a;
  }
  if (s.rfind("bits:", 0) == 0) {
    const std::string body = s.substr(5);
    const auto at = body.find('@');
    if (at == std::string::npos) throw ValidationError("bits spec needs <hex>@B: " + s);
    a.kind = Kind::Bits;
    const std::string hex = body.substr(0, at);
    if (hex.empty() || !std::all_of(hex.begin(), hex.end(), [](unsigned char c) { return std::isxdigit(c); }))
      throw ValidationError("bad hex mantissa: " + hex);
    a.mantissa = parse_int(hex, "mantissa", 16);
    const BigInt B = parse_int(body.substr(at + 1), "bit count");
    if (B < 64 || B > 1 << 20) throw ValidationError("bit count must lie in [64, 2^20]");
    a.B = static_cast<unsigned>(B.get_ui());
    if (a.mantissa >= (BigInt(1) << a.B)) throw ValidationError("mantissa must be below 2^B");
    return a;
  }
  const auto slash = s.find('/');
  a.kind = Kind::Rational;
  a.p = parse_int(s.substr(0, slash), "numerator");
  a.q = slash == std::string::npos ? BigInt(1) : parse_int(s.substr(slash + 1), "denominator");
  if (a.q == 0) throw ValidationError("zero denominator");
  BigRational r(a.p, a.q);
  r.canonicalize();
  a.p = r.get_num();
  a.q = r.get_den();
  return a;
}

std::string AlphaSpec::str() const {
  switch (kind) {
    case Kind::Rational:
      return p.get_str() + "/" + q.get_str();
    case Kind::Surd:
      return "surd:" + P.get_str() + "," + D.get_str() + "," + Q.get_str();
    case Kind::Rule:
      return "rule:" + rule;
    case Kind::Bits:
      return "bits:" + mantissa.get_str(16) + "@" + std::to_string(B);
  }
  return {};
}

Alpha AlphaSpec::to_alpha(unsigned bits) const {
  switch (kind) {
    case Kind::Rational:
      return Alpha::rational(p, q);
    case Kind::Surd:
      return Alpha::from_cf(cf_of_surd(QuadraticSurd::make(P, D, Q)), bits);
    case Kind::Rule:
      return Alpha::from_cf(cf_rule(rule), bits);
    case Kind::Bits:
      return Alpha::dyadic(mantissa, B);
  }
  throw ValidationError("bad alpha spec");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact L2 discrepancy of Kronecker lattices", "latdisc"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--bits", g.bits, "working precision for irrational alpha")->check(CLI::Range(64u, 1u << 20));
  app.add_option("--threads", g.threads, "worker threads (LATDISC_THREADS if unset)");

  std::string alpha_s;
  std::uint64_t N = 0;

  auto* cf = app.add_subcommand("cf", "continued fraction of alpha");
  std::size_t terms = 24;
  cf->add_option("--alpha", alpha_s)->required();
  cf->add_option("--terms", terms, "quotients shown for infinite expansions");

  auto* lat = app.add_subcommand("lattice", "dump L(alpha,N) or S(alpha,N)");
  bool lat_sym = false, lat_float = false;
  lat->add_option("--alpha", alpha_s)->required();
  lat->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  lat->add_flag("--sym", lat_sym);
  lat->add_flag("--float", lat_float);

  auto* disc = app.add_subcommand("disc", "exact L2 discrepancy");
  bool disc_sym = false, disc_float = false, disc_exact = false;
  std::string algo = "fast";
  disc->add_option("--alpha", alpha_s)->required();
  disc->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  disc->add_flag("--sym", disc_sym);
  auto* fl = disc->add_flag("--float", disc_float);
  disc->add_flag("--exact", disc_exact)->excludes(fl);
  disc->add_option("--algo", algo)->check(CLI::IsMember({"quad", "fast"}));

  auto* est = app.add_subcommand("estimate", "certified enclosure of D2^2");
  bool est_sym = false, est_unsym = false;
  est->add_option("--alpha", alpha_s)->required();
  est->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  auto* es = est->add_flag("--sym", est_sym);
  est->add_flag("--unsym", est_unsym)->excludes(es);

  auto* dio = app.add_subcommand("dioph", "weighted sums over 1/(m^2 ||m alpha||^2)");
  std::uint64_t m_from = 1, m_to = 0;
  std::string weight = "quarter";
  bool skip = false;
  dio->add_option("--alpha", alpha_s)->required();
  dio->add_option("--M", m_to)->required()->check(CLI::PositiveNumber);
  dio->add_option("--from", m_from)->check(CLI::PositiveNumber);
  dio->add_option("--weight", weight)->check(CLI::IsMember({"unit", "quarter", "half", "eighth", "linear"}));
  dio->add_flag("--skip-undefined", skip);

  auto* quad = app.add_subcommand("quadratic", "constants of a quadratic irrational");
  std::string surd_s, report = "A", variant_s = "S";
  std::uint64_t grid_lo = 1000, grid_hi = 10000000;
  std::size_t grid_n = 41, K_from = 5, K_to = 24;
  quad->add_option("--surd", surd_s, "P,D,Q")->required();
  quad->add_option("--report", report)->check(CLI::IsMember({"A", "Lambda", "c", "theorem2"}));
  quad->add_option("--grid-lo", grid_lo);
  quad->add_option("--grid-hi", grid_hi);
  quad->add_option("--grid-n", grid_n);
  quad->add_option("--K-from", K_from);
  quad->add_option("--K-to", K_to);
  quad->add_option("--variant", variant_s)->check(CLI::IsMember({"S", "L"}));

  auto* swr = app.add_subcommand("sweep-rational", "5 pi^3 D2^2 / log^2 q over Farey fractions");
  std::uint64_t Q = 100;
  std::size_t M = 1000;
  std::string mode = "full", summary_path;
  double threshold = -1;
  swr->add_option("--Q", Q)->check(CLI::PositiveNumber);
  swr->add_option("--mode", mode)->check(CLI::IsMember({"full", "sample"}));
  swr->add_option("--M", M)->check(CLI::PositiveNumber);
  swr->add_option("--variant", variant_s)->check(CLI::IsMember({"S", "L"}));
  swr->add_option("--threshold", threshold, "KS pass threshold");
  swr->add_option("--summary", summary_path, "write the summary JSON here");

  auto* swi = app.add_subcommand("sweep-irrational", "5 pi^3 D2^2 / log^2 N over random alpha");
  std::string measure = "lebesgue", estimator = "samur_stat";
  std::uint64_t swi_N = 1000000;
  swi->add_option("--N", swi_N)->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 62));
  swi->add_option("--M", M)->check(CLI::PositiveNumber);
  swi->add_option("--measure", measure)->check(CLI::IsMember({"lebesgue", "gauss"}));
  swi->add_option("--estimator", estimator)->check(CLI::IsMember({"exact", "prop1_mid", "samur_stat"}));
  swi->add_option("--variant", variant_s)->check(CLI::IsMember({"S", "L"}));
  swi->add_option("--threshold", threshold, "KS pass threshold");
  swi->add_option("--summary", summary_path, "write the summary JSON here");

  auto* chk = app.add_subcommand("check-bounds", "run the invariant corpus");
  std::string corpus = "full";
  chk->add_option("--corpus", corpus)->check(CLI::IsMember({"small", "full"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    const unsigned threads = resolve_threads(g.threads);

    if (cf->parsed()) {
      const AlphaSpec a = AlphaSpec::parse(alpha_s);
      const Alpha al = a.to_alpha(g.bits);
      const std::string r = al.cf().render(terms);
      if (g.json()) {
        ordered_json j;
        j["alpha"] = a.str();
        j["cf"] = r;
        j["a0"] = al.cf().a0().get_str();
        ordered_json q = ordered_json::array();
        for (std::size_t k = 1; k <= terms && al.cf().has(k); ++k) q.push_back(al.cf().quotient(k).get_str());
        j["quotients"] = q;
        out << j.dump(2) << "\n";
      } else {
        out << r << "\n";
      }
      return kOk;
    }

    if (lat->parsed()) {
      const Alpha al = AlphaSpec::parse(alpha_s).to_alpha(g.bits);
      const LatticePointSet P = lat_sym ? build_S(al, N) : build_L(al, N);
      if (g.json()) {
        ordered_json pts = ordered_json::array();
        for (std::size_t i = 0; i < P.size(); ++i) {
          const auto& X = P.points.x;
          const auto& Y = P.points.y;
          if (lat_float) {
            pts.push_back({X.fraction(i).get_d(), Y.fraction(i).get_d()});
          } else {
            pts.push_back({{"n", P.n_of(i)},
                           {"x", X.value(i).get_str() + "/" + X.scale().get_str()},
                           {"y", Y.value(i).get_str() + "/" + Y.scale().get_str()}});
          }
        }
        ordered_json j;
        j["N"] = N;
        j["symmetrized"] = lat_sym;
        j["points"] = pts;
        out << j.dump(2) << "\n";
      } else if (lat_float) {
        write_csv_float(out, P);
      } else {
        write_csv_exact(out, P);
      }
      return kOk;
    }

    if (disc->parsed()) {
      const Alpha al = AlphaSpec::parse(alpha_s).to_alpha(g.bits);
      const LatticePointSet P = disc_sym ? build_S(al, N) : build_L(al, N);
      const DiscrepancyValue v = algo == "quad" ? d2_exact_quadratic(P) : d2_exact_fast(P);
      const BigRational errb = P.d2sq_error();
      ordered_json j;
      j["N"] = N;
      std::vector<std::string> header, row;
      if (disc_float) {
        header = {"N", "d2sq", "d2_float"};
        row = {std::to_string(N), format_double(v.squared()), format_double(v.d2())};
        j["d2sq"] = v.squared();
      } else {
        header = {"N", "d2sq_num", "d2sq_den", "d2_float"};
        row = {std::to_string(N), v.d2_squared.get_num().get_str(), v.d2_squared.get_den().get_str(),
               format_double(v.d2())};
        j["d2sq"] = format_rational(v.d2_squared);
      }
      j["d2_float"] = v.d2();
      j["d2sq_error"] = errb.get_d();
      emit(out, g, j, header, {row});
      return kOk;
    }

    if (est->parsed()) {
      const Alpha al = AlphaSpec::parse(alpha_s).to_alpha(g.bits);
      const Enclosure e = est_unsym ? prop1_enclosure_L(al, N) : prop1_enclosure_S(al, N);
      ordered_json j;
      j["K"] = e.K;
      j["lo"] = e.lo;
      j["hi"] = e.hi;
      j["q_prev"] = e.q_prev.get_str();
      j["q_K"] = e.q_K.get_str();
      j["main_sum"] = interval_json(e.main_sum);
      j["tail_sum"] = interval_json(e.tail_sum);
      j["xi"] = interval_json(e.xi);
      j["t_block"] = interval_json(e.t_block);
      j["budget"] = interval_json(e.budget);
      j["tail_enumerated"] = e.tail_enumerated;
      emit(out, g, j,
           {"K", "lo", "hi", "q_prev", "q_K", "main_lo", "main_hi", "tail_lo", "tail_hi", "xi_lo", "xi_hi", "t_lo",
            "t_hi", "budget_lo", "budget_hi", "tail_enumerated"},
           {{std::to_string(e.K), format_double(e.lo), format_double(e.hi), e.q_prev.get_str(), e.q_K.get_str(),
             csv_interval(e.main_sum), csv_interval(e.tail_sum), csv_interval(e.xi), csv_interval(e.t_block),
             csv_interval(e.budget), e.tail_enumerated ? "1" : "0"}});
      return kOk;
    }

    if (dio->parsed()) {
      const Alpha al = AlphaSpec::parse(alpha_s).to_alpha(g.bits);
      const DiophSum s = dioph_sum(al, m_to, parse_weight(weight), m_from, skip);
      const std::string core = s.exact_core ? format_rational(*s.exact_core) : "";
      ordered_json j;
      j["m_from"] = m_from;
      j["m_to"] = m_to;
      j["weight"] = weight;
      j["value"] = interval_json(s.value);
      j["exact_core"] = s.exact_core ? ordered_json(core) : ordered_json();
      emit(out, g, j, {"m_from", "m_to", "weight", "lo", "hi", "exact_core"},
           {{std::to_string(m_from), std::to_string(m_to), weight, format_double(s.value.lo), format_double(s.value.hi),
             core}});
      return kOk;
    }

    if (quad->parsed()) {
      const AlphaSpec spec = AlphaSpec::parse("surd:" + surd_s);
      const ContinuedFraction c = cf_of_surd(QuadraticSurd::make(spec.P, spec.D, spec.Q));
      ordered_json j;
      j["surd"] = spec.str();
      if (report == "A") {
        const BigRational A = a_constant(c);
        j["A"] = format_rational(A);
        j["log_squared_target"] = log_squared_target(c);
        emit(out, g, j, {"surd", "A", "log_squared_target"},
             {{spec.str(), format_rational(A), format_double(log_squared_target(c))}});
      } else if (report == "Lambda") {
        const LambdaConstant L = lambda_constant(c);
        j["period"] = L.period;
        j["matrix"] = {L.m00.get_str(), L.m01.get_str(), L.m10.get_str(), L.m11.get_str()};
        j["trace"] = L.trace.get_str();
        j["det"] = L.det.get_str();
        j["eta"] = L.eta;
        j["Lambda"] = L.Lambda;
        emit(out, g, j, {"surd", "period", "trace", "det", "eta", "Lambda"},
             {{spec.str(), std::to_string(L.period), L.trace.get_str(), L.det.get_str(), format_double(L.eta),
               format_double(L.Lambda)}});
      } else if (report == "c") {
        const BeckEstimate b = beck_constant_estimate(Alpha::from_cf(c, g.bits), geometric_grid(grid_lo, grid_hi, grid_n));
        j["c_hat"] = b.c_hat;
        j["stderr"] = b.stderr_;
        j["intercept"] = b.intercept;
        ordered_json pts = ordered_json::array();
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < b.M.size(); ++i) {
          pts.push_back({{"M", b.M[i]}, {"sum", b.sums[i]}});
          rows.push_back({std::to_string(b.M[i]), format_double(b.sums[i]), format_double(b.c_hat),
                          format_double(b.stderr_)});
        }
        j["grid"] = pts;
        emit(out, g, j, {"M", "sum", "c_hat", "stderr"}, rows);
      } else {
        const Variant v = parse_variant(variant_s);
        double cc = 0.0;
        if (v == Variant::S) cc = beck_constant_estimate(Alpha::from_cf(c, g.bits), geometric_grid(grid_lo, grid_hi, grid_n)).c_hat;
        const ResidualTable t = theorem2_residuals(Alpha::from_cf(c, g.bits), K_from, K_to, v, cc);
        j["variant"] = v == Variant::S ? "S" : "L";
        j["c"] = t.c;
        if (v == Variant::L) {
          j["beta"] = t.beta;
          j["beta_stderr"] = t.beta_stderr;
          j["gamma"] = t.gamma;
          j["delta"] = t.delta;
          j["target_beta"] = t.target_beta;
        }
        ordered_json rows_j = ordered_json::array();
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : t.rows) {
          rows_j.push_back({{"K", r.K}, {"N", r.N.get_str()}, {"d2sq", format_rational(r.d2_squared)},
                            {"log_N", r.log_N}, {"residual", r.residual}});
          rows.push_back({std::to_string(r.K), r.N.get_str(), format_rational(r.d2_squared), format_double(r.log_N),
                          format_double(r.residual)});
        }
        j["rows"] = rows_j;
        emit(out, g, j, {"K", "N", "d2sq", "log_N", "residual"}, rows);
      }
      return kOk;
    }

    if (swr->parsed()) {
      SweepConfig cfg;
      cfg.mode = mode == "full" ? SweepConfig::Mode::FareyFull : SweepConfig::Mode::FareySample;
      cfg.Q = Q;
      cfg.M = M;
      cfg.seed = g.seed;
      cfg.variant = parse_variant(variant_s);
      cfg.bits = g.bits;
      cfg.threads = threads;
      const SweepResult r = theorem6_experiment(cfg);
      emit_sweep(out, err, g, r, threshold < 0 ? 0.80 : threshold, summary_path);
      return kOk;
    }

    if (swi->parsed()) {
      SweepConfig cfg;
      cfg.mode = SweepConfig::Mode::Irrational;
      cfg.N = swi_N;
      cfg.M = M;
      cfg.seed = g.seed;
      cfg.measure = measure == "gauss" ? Measure::Gauss : Measure::Lebesgue;
      cfg.estimator = estimator == "exact"       ? Estimator::Exact
                      : estimator == "prop1_mid" ? Estimator::Prop1Mid
                                                 : Estimator::SamurStat;
      cfg.variant = parse_variant(variant_s);
      cfg.bits = g.bits;
      cfg.threads = threads;
      const SweepResult r = theorem4_experiment(cfg);
      emit_sweep(out, err, g, r, threshold < 0 ? 0.07 : threshold, summary_path);
      return kOk;
    }

    if (chk->parsed()) {
      const BoundsReport rep = check_bounds(corpus == "small" ? CorpusSize::Small : CorpusSize::Full, threads, g.seed);
      ordered_json j;
      j["corpus"] = corpus;
      j["checks"] = rep.checks;
      j["violations"] = rep.violations;
      emit(out, g, j, {"corpus", "checks", "violations"},
           {{corpus, std::to_string(rep.checks), std::to_string(rep.violations.size())}});
      for (const auto& v : rep.violations) err << "violation: " << v << "\n";
      return rep.violations.empty() ? kOk : kViolation;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << "\n";
    return kPrecision;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace latdisc::cli
