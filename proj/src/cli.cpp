#include "kloost/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "kloost/bounds.hpp"
#include "kloost/cache.hpp"
#include "kloost/dedekind.hpp"
#include "kloost/kloosterman.hpp"
#include "kloost/multiplier.hpp"
#include "kloost/parallel.hpp"
#include "kloost/partitions.hpp"
#include "kloost/series.hpp"

namespace kloost::cli {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

mpfr_prec_t parse_precision(const std::string& s) {
  if (s == "auto") return 0;
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || v < 53 || v > 1 << 20) throw UsageError("precision must be 'auto' or an integer >= 53: " + s);
  return static_cast<mpfr_prec_t>(v);
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw UsageError("output format must be json, csv or text: " + s);
}

IntRange parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const Int v = std::stoll(s);
      return {v, v};
    }
    return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("range must look like A..B: " + s);
  }
}

// "lo..hi:count" (geometric) or a comma-separated list.
std::vector<Int> parse_grid(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon != std::string::npos) {
      const IntRange r = parse_range(s.substr(0, colon));
      return log_grid(r.lo, r.hi, std::stoul(s.substr(colon + 1)));
    }
    std::vector<Int> g;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) g.push_back(std::stoll(item));
    return g;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("grid must be lo..hi:count or a comma-separated list: " + s);
  }
}

json big(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::string radius(long double e) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3Le", e);
  return buf;
}

int digits_for(mpfr_prec_t p) { return std::max(20, static_cast<int>(static_cast<double>(p) * 0.30103)); }

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// One flat object; nested values are rendered as JSON text in csv/text mode.
void emit(const json& obj, OutputFormat fmt, std::ostream& out) {
  switch (fmt) {
    case OutputFormat::Json:
      out << obj.dump() << "\n";
      return;
    case OutputFormat::Text:
      for (const auto& [k, v] : obj.items()) out << k << ": " << scalar_text(v) << "\n";
      return;
    case OutputFormat::Csv: {
      std::string head, row;
      for (const auto& [k, v] : obj.items()) {
        head += (head.empty() ? "" : ",") + k;
        std::string cell = scalar_text(v);
        if (cell.find_first_of(",\"\n") != std::string::npos) {
          std::string q = "\"";
          for (char ch : cell) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          cell = q + "\"";
        }
        row += (row.empty() ? "" : ",") + cell;
      }
      out << head << "\n" << row << "\n";
      return;
    }
  }
}

json series_json(const char* kind, const SeriesResult& r) {
  const int digits = digits_for(r.precision);
  return {{"schema_version", kSchemaVersion},
          {"kind", kind},
          {"n", r.n},
          {"cutoff", r.cutoff_c},
          {"precision_bits", r.precision},
          {"value", r.value.to_string(digits)},
          {"imag", r.imag.to_string(6)},
          {"err", radius(r.value.error())},
          {"gap", r.rounding_gap.to_string(6)},
          {"rounded", big(r.rounded)},
          {"verdict", verdict_name(r.verdict)}};
}

json bound_json(const BoundReport& b) {
  json v = json::array();
  for (const auto& x : b.violations) v.push_back({{"m", x.m}, {"n", x.n}, {"c", x.c}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  json w = json::array();
  for (const auto& [lo, k] : b.window_constants) w.push_back({{"from", lo}, {"constant", k}});
  return {{"schema_version", kSchemaVersion}, {"check", b.check},       {"domain", b.domain},
          {"checked", b.checked},             {"violations", v},        {"fitted_constant", b.fitted_constant},
          {"window_constants", w},            {"growth_flag", b.growth_flag},
          {"exponent", nullptr},              {"residual", nullptr}};
}

json fit_json(const std::string& check, const std::string& domain, const FitReport& f) {
  json pts = json::array();
  for (const auto& [x, y] : f.points) pts.push_back({x, y});
  return {{"schema_version", kSchemaVersion},
          {"check", check},
          {"domain", domain},
          {"violations", json::array()},
          {"fitted_constant", std::exp(f.intercept)},
          {"exponent", f.exponent},
          {"residual", f.residual},
          {"dropped_zeros", f.dropped_zeros},
          {"points", pts}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace

Config load_config(const std::filesystem::path& path, Config base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "precision") {
      base.precision_bits = parse_precision(value);
    } else if (key == "cache_path") {
      base.cache_path = value;
    } else if (key == "threads") {
      try {
        base.threads = static_cast<unsigned>(std::max(1, std::stoi(value)));
      } catch (const std::exception&) {
        throw UsageError(path.string() + ":" + std::to_string(lineno) + ": threads must be an integer");
      }
    } else if (key == "output_format") {
      base.output_format = parse_format(value);
    } else {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return base;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kloosterman sums, multiplier systems and Rademacher-type exact formulas", "kloost"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string precision_opt, cache_opt, format_opt, config_opt;
  int threads_opt = 0;
  app.add_option("--precision", precision_opt, "working precision in bits, or 'auto'");
  app.add_option("--cache", cache_opt, "cache file path (default $KLOOST_CACHE or ~/.cache/kloost/sums.bin)");
  app.add_option("--threads", threads_opt, "worker threads (default: hardware parallelism)");
  app.add_option("--format", format_opt, "output format: json, csv or text");
  app.add_option("--config", config_opt, "key=value config file");

  Config cfg;
  std::unique_ptr<SumCache> cache;
  auto open_cache = [&]() -> SumCache& {
    if (!cache) cache = std::make_unique<SumCache>(cfg.cache_path);
    return *cache;
  };
  std::function<int()> action;
  bool format_given = false;

  // partition / rank2 / rank3
  Int series_n = 0, cutoff = 0;
  double alpha = 0;
  auto add_series = [&](const char* name, const char* kind, int j, double default_alpha, const char* help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("n", series_n, "index")->required();
    sc->add_option("--cutoff", cutoff, "largest modulus c (default ceil(alpha sqrt n))");
    sc->add_option("--alpha", alpha, "cutoff factor")->default_str(std::to_string(static_cast<int>(default_alpha)));
    sc->callback([&, kind, j, default_alpha] {
      action = [&, kind, j, default_alpha] {
        if (series_n < 1) throw UsageError("n must be positive");
        const Int c = cutoff > 0 ? cutoff : cutoff_for(alpha > 0 ? alpha : default_alpha, series_n);
        SeriesOptions opt;
        opt.threads = cfg.threads;
        opt.keep_terms = false;
        const SeriesResult r = series_j(j, series_n, c, cfg.precision_bits, opt);
        json o = series_json(kind, r);
        if (j == 1) o["p"] = r.verdict == RoundingVerdict::Rounded ? big(r.rounded) : json(nullptr);
        emit(o, cfg.output_format, out);
        return r.verdict == RoundingVerdict::Rounded ? kExitOk : kExitIndeterminate;
      };
    });
  };
  add_series("partition", "partition", 1, 5, "p(n) from the truncated Rademacher series");
  add_series("rank2", "rank2", 2, 10, "N(0,2;n) - N(1,2;n) from the psi series");
  add_series("rank3", "rank3", 3, 10, "N(0,3;n) - N(1,3;n) from the twisted eta series");

  // tail
  int tail_j = 1;
  std::string tail_range, tail_csv;
  double tail_alpha = 5;
  Int tail_step = 1;
  {
    auto* sc = app.add_subcommand("tail", "R_j(n, alpha sqrt n) over a range of n");
    sc->add_option("--j", tail_j, "1: p(n), 2: rank mod 2, 3: rank mod 3")->required()->check(CLI::Range(1, 3));
    sc->add_option("--n-range", tail_range, "A..B")->required();
    sc->add_option("--alpha", tail_alpha, "cutoff factor")->default_val(5.0);
    sc->add_option("--step", tail_step, "stride in n")->default_val(1);
    sc->add_option("--csv", tail_csv, "write the batch as CSV (n,value,rounded,gap,tail,cutoff)");
    sc->callback([&] {
      action = [&] {
        const IntRange r = parse_range(tail_range);
        if (r.lo < 1 || r.hi < r.lo || tail_step < 1 || !(tail_alpha > 0)) throw UsageError("bad tail range");
        std::vector<Int> ns;
        for (Int n = r.lo; n <= r.hi; n += tail_step) ns.push_back(n);
        SeriesOptions inner;
        inner.keep_terms = false;
        auto results = parallel_map(
            ns.size(),
            [&](std::size_t i) {
              Int x = cutoff_for(tail_alpha, ns[i]);
              if (static_cast<double>(x) > tail_alpha * std::sqrt(static_cast<double>(ns[i])) + 1e-9) --x;
              return series_j(tail_j, ns[i], std::max<Int>(x, 1), cfg.precision_bits, inner);
            },
            cfg.threads);
        std::ostringstream csv;
        csv << "n,value,rounded,gap,tail,cutoff\n";
        for (const SeriesResult& s : results) {
          const BigReal tail = BigReal(series_oracle(tail_j, s.n), s.value.precision()) - s.value;
          json o = series_json("tail", s);
          o["j"] = tail_j;
          o["tail"] = tail.to_string(12);
          if (cfg.output_format != OutputFormat::Csv) emit(o, cfg.output_format, out);
          csv << s.n << "," << s.value.to_string(digits_for(s.precision)) << "," << s.rounded.get_str() << ","
              << s.rounding_gap.to_string(6) << "," << tail.to_string(12) << "," << s.cutoff_c << "\n";
        }
        if (cfg.output_format == OutputFormat::Csv) out << csv.str();
        if (!tail_csv.empty()) write_file(tail_csv, csv.str());
        return kExitOk;
      };
    });
  }

  // kloosterman
  std::string mult = "eta";
  Int km = 0, kn = 0, kc = 1;
  bool exact = false;
  int eval_bits = 0;
  {
    auto* sc = app.add_subcommand("kloosterman", "one Kloosterman sum, exact or evaluated");
    sc->add_option("--mult", mult, "multiplier id, or 'standard' / 'A'")->default_val("eta");
    sc->add_option("-m", km, "first index")->required();
    sc->add_option("-n", kn, "second index")->required();
    sc->add_option("-c", kc, "modulus")->required();
    auto* ex = sc->add_flag("--exact", exact, "print the phase multiset");
    sc->add_option("--eval", eval_bits, "evaluate at this many bits")->excludes(ex);
    sc->callback([&] {
      action = [&] {
        SumKey key{mult, km, kn, kc};
        if (mult == "A") key.m = 0;
        if (mult != "standard" && mult != "A") key.multiplier = MultiplierSpec::parse(mult).id();
        SumCache& cs = open_cache();
        ExpSum s;
        if (auto hit = cs.get(key)) {
          s = *hit;
        } else {
          s = recompute(key);
          cs.put(s);
        }
        json o = {{"schema_version", kSchemaVersion}, {"multiplier", key.multiplier}, {"m", km}, {"n", kn}, {"c", kc}};
        if (exact) {
          json terms = json::array();
          for (const auto& t : s.terms()) terms.push_back({{"phase", t.phase.str()}, {"weight", t.weight}});
          o["terms"] = terms;
          o["nterms"] = s.terms().size();
          o["summands"] = s.summands();
        } else {
          const mpfr_prec_t bits = eval_bits > 0 ? eval_bits : (cfg.precision_bits > 0 ? cfg.precision_bits : 64);
          if (bits < 53) throw UsageError("--eval needs at least 53 bits");
          const EvaluatedSum e = evaluate(s, bits);
          const int digits = digits_for(bits);
          o["re"] = e.value.re.to_string(digits);
          o["im"] = e.value.im.to_string(digits);
          o["err"] = radius(e.error);
          o["nterms"] = e.nterms;
        }
        emit(o, cfg.output_format, out);
        return kExitOk;
      };
    });
  }

  // dedekind
  Int dd = 0, dc = 1;
  {
    auto* sc = app.add_subcommand("dedekind", "s(d, c) as an exact fraction");
    sc->add_option("d", dd)->required();
    sc->add_option("c", dc)->required();
    sc->callback([&] {
      action = [&] {
        const Rational s = dedekind_fast(dd, dc).value;
        if (!format_given || cfg.output_format == OutputFormat::Text) {
          out << s.get_str() << "\n";
        } else {
          emit({{"schema_version", kSchemaVersion}, {"d", dd}, {"c", dc}, {"s", s.get_str()}}, cfg.output_format, out);
        }
        return kExitOk;
      };
    });
  }

  // multiplier
  std::vector<std::string> matrix;
  std::string form = "rademacher";
  {
    auto* sc = app.add_subcommand("multiplier", "nu(g) as a phase for g = (a b; c d)");
    sc->add_option("--mult", mult, "multiplier id")->default_val("eta");
    sc->add_option("args", matrix, "[name] a b c d")->required()->expected(4, 5);
    sc->add_option("--form", form, "eta formula: rademacher or knopp")->default_val("rademacher");
    sc->callback([&] {
      action = [&] {
        if (matrix.size() == 5) mult = matrix.front();
        Int e[4];
        for (std::size_t i = 0; i < 4; ++i) {
          const std::string& s = matrix[matrix.size() - 4 + i];
          std::size_t used = 0;
          try {
            e[i] = std::stoll(s, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used == 0 || used != s.size()) throw UsageError("matrix entries must be integers: " + s);
        }
        const GammaMatrix g = GammaMatrix::make(e[0], e[1], e[2], e[3]);
        const MultiplierSpec spec = MultiplierSpec::parse(mult);
        RationalPhase ph;
        if (form == "knopp") {
          if (!(spec == MultiplierSpec::eta())) throw UsageError("--form knopp applies to eta only");
          ph = eval_eta_knopp(g);
        } else if (form == "rademacher") {
          ph = eval_multiplier(spec, g);
        } else {
          throw UsageError("--form must be rademacher or knopp");
        }
        emit({{"schema_version", kSchemaVersion},
              {"multiplier", spec.id()},
              {"matrix", {g.a, g.b, g.c, g.d}},
              {"phase", ph.str()},
              {"weight", spec.weight().get_str()},
              {"alpha", spec.alpha().get_str()}},
             cfg.output_format, out);
        return kExitOk;
      };
    });
  }

  // oracle
  Int oracle_n = 0, oracle_max = 0;
  std::string oracle_out;
  {
    auto* sc = app.add_subcommand("oracle", "exact combinatorial values");
    sc->require_subcommand(1);
    auto* p = sc->add_subcommand("p", "p(n) by the pentagonal recurrence");
    p->add_option("n", oracle_n)->required();
    p->callback([&] {
      action = [&] {
        if (oracle_n < 0) throw UsageError("n must be non-negative");
        emit({{"schema_version", kSchemaVersion}, {"n", oracle_n}, {"p", big(pentagonal_p(oracle_n))}}, cfg.output_format,
             out);
        return kExitOk;
      };
    });
    auto* rank = sc->add_subcommand("rank", "rank table N(m, n) as CSV");
    rank->add_option("--max", oracle_max, "largest n")->required();
    rank->add_option("--out", oracle_out, "CSV path (default stdout)");
    rank->callback([&] {
      action = [&] {
        if (oracle_max < 1) throw UsageError("--max must be positive");
        const RankTable t = build_rank_table(oracle_max);
        std::ostringstream csv;
        csv << "n,m,N(m,n)\n";
        for (Int n = 0; n <= oracle_max; ++n)
          for (Int m = -n; m <= n; ++m) csv << n << "," << m << "," << t.count(m, n).get_str() << "\n";
        if (oracle_out.empty())
          out << csv.str();
        else
          write_file(oracle_out, csv.str());
        return kExitOk;
      };
    });
  }

  // lab
  std::string lab_out, lab_kind = "standard", lab_m_range = "1..5", lab_n_range = "1..5", lab_grid = "100..10000:25",
              lab_decay_range = "100..2000";
  Int lab_c_max = 300, lab_q = 1, lab_m = 1, lab_n = -4, lab_first = 16;
  int lab_j = 1;
  double lab_alpha = 5;
  Int lab_step = 1;
  bool lab_use_cache = false;
  {
    auto* sc = app.add_subcommand("lab", "bound and growth experiments");
    sc->require_subcommand(1);
    auto finish = [&](const json& report) {
      emit(report, cfg.output_format, out);
      if (!lab_out.empty()) write_file(lab_out, report.dump(2) + "\n");
    };
    auto* weil = sc->add_subcommand("weil", "Weil-type bounds");
    weil->add_option("--kind", lab_kind, "standard, theta or eta-twist")->default_val("standard");
    weil->add_option("--mult", mult, "theta-type multiplier id for --kind theta")->default_val("theta");
    weil->add_option("--q", lab_q, "twist modulus for --kind eta-twist (1 or 3)")->default_val(1);
    weil->add_option("--m-range", lab_m_range)->default_val("1..5");
    weil->add_option("--n-range", lab_n_range)->default_val("1..5");
    weil->add_option("--c-max", lab_c_max)->default_val(300);
    weil->add_option("--out", lab_out, "also write the JSON report here");
    weil->callback([&] {
      action = [&] {
        const IntRange mr = parse_range(lab_m_range), nr = parse_range(lab_n_range);
        BoundReport b;
        if (lab_kind == "standard")
          b = weil_check_standard(mr, nr, lab_c_max);
        else if (lab_kind == "theta")
          b = weil_check_theta_type(MultiplierSpec::parse(mult == "eta" ? "theta" : mult), mr, nr, lab_c_max);
        else if (lab_kind == "eta-twist")
          b = weil_check_eta_twist(lab_q, mr, nr, lab_c_max);
        else
          throw UsageError("--kind must be standard, theta or eta-twist");
        finish(bound_json(b));
        return b.violations.empty() ? kExitOk : kExitIndeterminate;
      };
    });
    auto* avg = sc->add_subcommand("avg-weil", "windowed average of |S|/c");
    avg->add_option("--mult", mult)->default_val("eta");
    avg->add_option("-m", lab_m)->default_val(1);
    avg->add_option("-n", lab_n)->default_val(-4);
    avg->add_option("--first", lab_first, "first window start")->default_val(16);
    avg->add_option("--c-max", lab_c_max)->default_val(2048);
    avg->add_option("--out", lab_out);
    avg->add_flag("--use-cache", lab_use_cache);
    avg->callback([&] {
      action = [&] {
        const BoundReport b = average_weil(MultiplierSpec::parse(mult), lab_m, lab_n, lab_first, lab_c_max,
                                           lab_use_cache ? &open_cache() : nullptr);
        finish(bound_json(b));
        return kExitOk;
      };
    });
    auto* cancel = sc->add_subcommand("cancel", "growth exponent of sum_{c<=X} S/c");
    cancel->add_option("--mult", mult)->default_val("eta");
    cancel->add_option("-m", lab_m)->default_val(1);
    cancel->add_option("-n", lab_n)->default_val(-4);
    cancel->add_option("--grid", lab_grid, "lo..hi:count or a list")->default_val("100..10000:25");
    cancel->add_option("--out", lab_out);
    cancel->add_flag("--use-cache", lab_use_cache);
    cancel->callback([&] {
      action = [&] {
        const MultiplierSpec spec = MultiplierSpec::parse(mult);
        const CancellationReport r = cancellation_experiment(lab_m, lab_n, spec, parse_grid(lab_grid),
                                                             lab_use_cache ? &open_cache() : nullptr);
        json o = fit_json("cancel:" + spec.id(), "m=" + std::to_string(lab_m) + " n=" + std::to_string(lab_n) + " X=" + lab_grid,
                          r.fit);
        o["below_half"] = r.below_half;
        o["below_sixth"] = r.below_sixth;
        o["within_hypotheses"] = r.within_hypotheses;
        if (!r.within_hypotheses) o["note"] = "outside the mixed-sign hypotheses (m~ > 0, n~ < 0)";
        finish(o);
        return kExitOk;
      };
    });
    auto* decay = sc->add_subcommand("tail-decay", "log-log fit of R_j(n, alpha sqrt n)");
    decay->add_option("--j", lab_j)->default_val(1)->check(CLI::Range(1, 3));
    decay->add_option("--n-range", lab_decay_range)->default_val("100..2000");
    decay->add_option("--alpha", lab_alpha)->default_val(5.0);
    decay->add_option("--step", lab_step)->default_val(1);
    decay->add_option("--out", lab_out);
    decay->callback([&] {
      action = [&] {
        const IntRange r = parse_range(lab_decay_range);
        SeriesOptions opt;
        opt.threads = cfg.threads;
        const TailDecayReport t = tail_decay_experiment(lab_j, r.lo, r.hi, lab_alpha, lab_step, opt);
        finish(fit_json("tail-decay:j=" + std::to_string(lab_j), "n=" + lab_decay_range + " alpha=" + std::to_string(lab_alpha),
                        t.fit));
        return kExitOk;
      };
    });
  }

  // cache
  {
    auto* sc = app.add_subcommand("cache", "inspect or manage the sum cache");
    sc->require_subcommand(1);
    sc->add_subcommand("stats", "record count and file size")->callback([&] {
      action = [&] {
        const CacheStats s = open_cache().stats();
        emit({{"schema_version", kSchemaVersion},
              {"path", cfg.cache_path.string()},
              {"records", s.records},
              {"bytes", s.bytes},
              {"corruption", s.corruption}},
             cfg.output_format, out);
        return s.corruption.empty() ? kExitOk : kExitIndeterminate;
      };
    });
    sc->add_subcommand("clear", "delete every record")->callback([&] {
      action = [&] {
        open_cache().clear();
        emit({{"schema_version", kSchemaVersion}, {"path", cfg.cache_path.string()}, {"cleared", true}}, cfg.output_format,
             out);
        return kExitOk;
      };
    });
    sc->add_subcommand("verify", "recompute a fixed-seed 1% sample")->callback([&] {
      action = [&] {
        const CacheVerifyReport r = open_cache().verify(0.01);
        emit({{"schema_version", kSchemaVersion},
              {"path", cfg.cache_path.string()},
              {"checked", r.checked},
              {"mismatches", r.mismatches},
              {"corruption", r.corruption},
              {"ok", r.ok()}},
             cfg.output_format, out);
        if (!r.ok()) err << "cache verify: corruption or mismatch in " << cfg.cache_path.string() << "\n";
        return r.ok() ? kExitOk : kExitIndeterminate;
      };
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.threads = default_threads();
    cfg.cache_path = SumCache::default_path();
    if (!config_opt.empty()) cfg = load_config(config_opt, cfg);
    if (!precision_opt.empty()) cfg.precision_bits = parse_precision(precision_opt);
    if (!cache_opt.empty()) cfg.cache_path = cache_opt;
    if (threads_opt > 0) cfg.threads = static_cast<unsigned>(threads_opt);
    if (!format_opt.empty()) {
      cfg.output_format = parse_format(format_opt);
      format_given = true;
    }
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "out of range: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIndeterminate;
  }
}

}  // namespace kloost::cli
