#include "mdlq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mdlq/codec.hpp"
#include "mdlq/design_io.hpp"
#include "mdlq/error.hpp"
#include "mdlq/eval.hpp"

namespace mdlq::cli {
namespace {

using nlohmann::json;

// Serialized form of a run; flags override values loaded from --config.
struct RunConfig {
  std::optional<std::string> lattice;
  std::optional<std::int64_t> index;
  std::optional<std::string> params;
  std::optional<double> beta, rate, a, entropy;
  std::optional<std::string> source;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, format, figure, design, indices;
  std::optional<int> threads;
};

template <class T>
void take(std::optional<T>& dst, const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  dst = j.at(key).get<T>();
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config " + path);
  RunConfig c;
  try {
    json j;
    in >> j;
    take(c.lattice, j, "lattice");
    take(c.index, j, "index");
    if (j.contains("params")) {
      const auto& p = j.at("params");
      if (p.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i].get<std::int64_t>());
        c.params = s;
      } else {
        c.params = p.get<std::string>();
      }
    }
    take(c.beta, j, "beta");
    take(c.rate, j, "rate");
    take(c.a, j, "a");
    take(c.entropy, j, "entropy");
    take(c.source, j, "source");
    take(c.samples, j, "samples");
    take(c.seed, j, "seed");
    take(c.out, j, "out");
    take(c.format, j, "format");
    take(c.figure, j, "figure");
    take(c.design, j, "design");
    take(c.threads, j, "threads");
    if (j.contains("indices")) {
      const auto& p = j.at("indices");
      if (p.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i].get<std::int64_t>());
        c.indices = s;
      } else {
        c.indices = p.get<std::string>();
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "config " + path + ": " + e.what());
  }
  return c;
}

template <class T>
void overlay(std::optional<T>& base, const std::optional<T>& flag) {
  if (flag) base = flag;
}

RunConfig merge(RunConfig base, const RunConfig& f) {
  overlay(base.lattice, f.lattice);
  overlay(base.index, f.index);
  overlay(base.params, f.params);
  overlay(base.beta, f.beta);
  overlay(base.rate, f.rate);
  overlay(base.a, f.a);
  overlay(base.entropy, f.entropy);
  overlay(base.source, f.source);
  overlay(base.samples, f.samples);
  overlay(base.seed, f.seed);
  overlay(base.out, f.out);
  overlay(base.format, f.format);
  overlay(base.figure, f.figure);
  overlay(base.design, f.design);
  overlay(base.indices, f.indices);
  overlay(base.threads, f.threads);
  return base;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad integer '" + tok + "'");
    }
  }
  return out;
}

int thread_count(const RunConfig& c) {
  if (c.threads) return std::max(1, *c.threads);
  if (const char* env = std::getenv("MDLQ_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "MDLQ_THREADS must be an integer");
    }
  }
  return 1;
}

std::string format_of(const RunConfig& c, const char* fallback) {
  std::string f = c.format.value_or(fallback);
  if (f != "json" && f != "csv") throw Error(ErrorCode::InvalidArgument, "format must be json or csv");
  return f;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out && *c.out != "-") {
    save_text_file(*c.out, text);
  } else {
    out << text;
  }
}

Labeling design_from_config(const RunConfig& c) {
  if (c.design) return load_design_file(*c.design);
  if (!c.lattice) throw Error(ErrorCode::InvalidArgument, "--lattice is required");
  const Lattice lat = Lattice::make(parse_lattice(*c.lattice));
  Params p;
  if (c.params) {
    p = parse_int_list(*c.params);
    if (c.index) {
      const auto sub = SimilarSublattice::build(lat, p);
      if (sub.index() != *c.index)
        throw Error(ErrorCode::InvalidArgument, "--params give index " + std::to_string(sub.index()));
    }
  } else if (c.index) {
    p = find_params(lat, *c.index);
  } else {
    throw Error(ErrorCode::InvalidArgument, "give --index or --params");
  }
  return Labeling::build(SimilarSublattice::build(lat, p), group_for(lat));
}

double beta_from_config(const RunConfig& c, const Labeling& lab) {
  if (c.beta && (c.rate || c.a || c.entropy))
    throw Error(ErrorCode::InvalidArgument, "--beta and --rate/--a/--entropy are mutually exclusive");
  if (c.rate || c.a || c.entropy) {
    if (!c.rate || !c.a || !c.entropy)
      throw Error(ErrorCode::InvalidArgument, "rate targeting needs --rate, --a and --entropy together");
    const Lattice& lat = lab.lattice();
    const int L = lat.dim();
    const double betaL = std::exp2(L * *c.entropy - L * *c.rate * (1.0 + *c.a)) / (std::exp2(L) * lat.volume());
    return std::pow(betaL, 1.0 / L);
  }
  return c.beta.value_or(1.0);
}

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

int report_properties(const Labeling& lab, const PropertyReport& rep, std::ostream& os) {
  os << "property reuse (each label used N times per channel): " << pass(rep.reuse) << '\n';
  os << "property shift: " << pass(rep.shift) << '\n';
  os << "property midpoint: " << pass(rep.midpoint) << '\n';
  os << "balance along translates: " << pass(rep.balance) << '\n';
  os << "round trip (" << rep.round_trip_points << " points): " << pass(rep.round_trip) << '\n';
  for (const auto& f : rep.failures) os << "  " << f << '\n';
  os << "sum d_s over V0(0): " << lab.sum_ds() << " (" << lab.sum_ds_units() << " units of "
     << ds_unit_scale(lab.lattice()) << ")\n";
  os << "mean excess: " << lab.mean_excess() << '\n';
  return rep.ok() ? 0 : 1;
}

int cmd_design(const RunConfig& c, std::ostream& out) {
  const Labeling lab = design_from_config(c);
  const std::string text = dump_json(design_to_json(lab));
  const bool to_stdout = !c.out || *c.out == "-";
  emit(c, text, out);
  if (to_stdout) return lab.verify().ok() ? 0 : 1;
  return report_properties(lab, lab.verify(), out);
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  Labeling lab = design_from_config(c);
  const double beta = beta_from_config(c, lab);
  const ScaledDesign d(std::move(lab), beta);
  const SourceModel src = SourceModel::parse(c.source.value_or("periodic:20"));
  const SimReport r = simulate(d, src, c.samples.value_or(100'000), c.seed.value_or(1), thread_count(c));
  const json j = report_to_json(d, src, r);
  if (format_of(c, "json") == "json") {
    emit(c, dump_json(j), out);
  } else {
    std::string head, row;
    for (const char* k : {"n", "seed", "d0", "d1", "d2", "ds", "H0", "H1", "H2", "h", "R0_analytic", "R_analytic",
                          "d0_analytic", "ds_analytic"}) {
      head += (head.empty() ? "" : ",") + std::string(k);
      row += (row.empty() ? "" : ",") + j.at(k).dump();
    }
    emit(c, "lattice,index,beta,source," + head + "\n" + j["design"]["lattice"].get<std::string>() + "," +
                j["design"]["index"].dump() + "," + j["design"]["beta"].dump() + "," + src.to_string() + "," + row +
                "\n",
         out);
  }
  return 0;
}

std::string csv_to_json(const std::string& csv) {
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  std::vector<std::string> cols;
  {
    std::stringstream hs(line);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  json rows = json::array();
  while (std::getline(ss, line)) {
    std::stringstream ls(line);
    std::string v;
    json row = json::object();
    for (std::size_t i = 0; std::getline(ls, v, ',') && i < cols.size(); ++i) {
      json parsed = json::parse(v, nullptr, false);
      row[cols[i]] = parsed.is_discarded() ? json(v) : parsed;
    }
    rows.push_back(row);
  }
  return dump_json({{"schema", kReportSchema}, {"rows", rows}});
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
  SweepConfig s;
  if (c.indices) {
    s.indices_given = true;
    s.indices = parse_int_list(*c.indices);
  }
  if (c.lattice) s.lattice = parse_lattice(*c.lattice);
  s.a = c.a.value_or(0.5);
  s.h = c.entropy.value_or(0.0);
  s.beta = c.beta.value_or(1.0);
  s.threads = thread_count(c);
  const std::string csv = figure_csv(parse_figure(c.figure.value_or("fig1")), s);
  emit(c, format_of(c, "csv") == "csv" ? csv : csv_to_json(csv), out);
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  if (!c.design) throw Error(ErrorCode::InvalidArgument, "verify needs --design FILE");
  const Labeling lab = load_design_file(*c.design);
  const auto rep = lab.verify(c.samples.value_or(10'000), c.seed.value_or(1));
  int status = report_properties(lab, rep, out);
  const Sandwich s = bound_sandwich(lab, c.beta.value_or(1.0));
  out << "bound sandwich " << s.lower << " <= " << s.mid << " <= " << s.upper << ": " << pass(s.holds()) << '\n';
  if (!s.holds()) status = 1;
  const EdgeHistogram h = edge_histogram(lab);
  out << "edge histogram below last shell matches theta series: " << pass(h.below_last_equal) << '\n';
  out << "edge histogram last shell bounded: " << pass(h.last_bounded) << '\n';
  return status;
}

void add_options(CLI::App* app, RunConfig& f, std::string& config_path, std::initializer_list<std::string_view> names) {
  auto want = [&](std::string_view n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  app->add_option("--config", config_path, "JSON run configuration; flags override it");
  if (want("lattice")) app->add_option("--lattice", f.lattice, "Z1, Z2, Z4, Z8 or A2");
  if (want("index")) app->add_option("--index", f.index, "sublattice index N");
  if (want("params")) app->add_option("--params", f.params, "sublattice parameters a,b[,c,d]");
  if (want("design")) app->add_option("--design", f.design, "design file");
  if (want("beta")) app->add_option("--beta", f.beta, "scale factor");
  if (want("rate")) app->add_option("--rate", f.rate, "target rate R per dimension");
  if (want("a")) app->add_option("--a", f.a, "exponent a in N = 2^{L(aR+1)}");
  if (want("entropy")) app->add_option("--entropy", f.entropy, "source entropy h(p), bits");
  if (want("source")) app->add_option("--source", f.source, "uniform:W, gauss:S or periodic:K (default periodic:20)");
  if (want("samples")) app->add_option("--samples", f.samples, "number of samples");
  if (want("seed")) app->add_option("--seed", f.seed, "random seed");
  if (want("out")) app->add_option("--out", f.out, "output path (default stdout)");
  if (want("format")) app->add_option("--format", f.format, "json or csv");
  if (want("threads")) app->add_option("--threads", f.threads, "worker threads (default MDLQ_THREADS or 1)");
  if (want("figure")) app->add_option("--figure", f.figure, "fig1, fig9, fig10, asymptotic or sandwich");
  if (want("indices"))
    app->add_option("--indices", f.indices, "comma-separated sweep indices; empty gives a header-only table");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiple-description lattice vector quantizer toolkit", "mdlq"};
  app.require_subcommand(1);
  RunConfig flags;
  std::string config_path;
  auto* design = app.add_subcommand("design", "build a labeling and write its design file");
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo distortion and entropy report");
  auto* eval = app.add_subcommand("eval", "analytic tables behind the figures");
  auto* verify = app.add_subcommand("verify", "replay property checks on a design file");
  add_options(design, flags, config_path, {"lattice", "index", "params", "out"});
  add_options(simulate_cmd, flags, config_path,
              {"lattice", "index", "params", "design", "beta", "rate", "a", "entropy", "source", "samples", "seed",
               "out", "format", "threads"});
  add_options(eval, flags, config_path,
              {"figure", "indices", "lattice", "a", "entropy", "beta", "threads", "out", "format"});
  add_options(verify, flags, config_path, {"design", "beta", "samples", "seed"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: InvalidArgument: " << e.what() << '\n';
    return 2;
  }

  try {
    RunConfig cfg = config_path.empty() ? flags : merge(load_config(config_path), flags);
    if (design->parsed()) return cmd_design(cfg, out);
    if (simulate_cmd->parsed()) return cmd_simulate(cfg, out);
    if (eval->parsed()) return cmd_eval(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: InvalidArgument: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace mdlq::cli
