#include "gmf/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gmf/json_io.hpp"
#include "gmf/parallel.hpp"
#include "gmf/quadrature.hpp"
#include "gmf/semigroup.hpp"
#include "gmf/special.hpp"

namespace gmf::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw CLI::ValidationError("empty entry in list: " + s);
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw CLI::ValidationError("bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("empty list: " + s);
  return out;
}

Point parse_point(const std::string& s, int dim) {
  const auto v = parse_csv_doubles(s);
  if (static_cast<int>(v.size()) != dim)
    throw CLI::ValidationError("expected " + std::to_string(dim) + " coordinates, got '" + s + "'");
  Point p(dim);
  for (int i = 0; i < dim; ++i) p.set(i, v[static_cast<std::size_t>(i)]);
  return p;
}

// kind:params mini-language, e.g. ball:0,1  bump:0,0.5  hermite:2  const:1
// poly:c0,c1,... (axes split by ';'). Center coordinates take `dim` entries.
TestFunction parse_function(const std::string& spec, int dim) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("function spec needs kind:params, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string params = spec.substr(colon + 1);
  if (kind == "const") {
    const auto v = parse_csv_doubles(params);
    if (v.size() != 1) throw CLI::ValidationError("const takes one value");
    return TestFunction::constant(dim, v[0]);
  }
  if (kind == "ball" || kind == "bump") {
    const auto v = parse_csv_doubles(params);
    if (static_cast<int>(v.size()) != dim + 1)
      throw CLI::ValidationError(kind + " takes " + std::to_string(dim) + " center coordinates and one scale");
    Point c(dim);
    for (int i = 0; i < dim; ++i) c.set(i, v[static_cast<std::size_t>(i)]);
    const double scale = v[static_cast<std::size_t>(dim)];
    return kind == "ball" ? TestFunction::ball_indicator(c, scale) : TestFunction::gaussian_bump(c, scale);
  }
  if (kind == "hermite") {
    const auto v = parse_csv_doubles(params);
    std::vector<int> deg;
    for (double d : v) deg.push_back(static_cast<int>(d));
    while (static_cast<int>(deg.size()) < dim) deg.push_back(0);
    if (static_cast<int>(deg.size()) != dim) throw CLI::ValidationError("hermite has too many degrees for --dim");
    return TestFunction::hermite(deg);
  }
  if (kind == "poly") {
    std::vector<std::vector<double>> axes;
    std::stringstream ss(params);
    std::string part;
    while (std::getline(ss, part, ';')) axes.push_back(parse_csv_doubles(part));
    while (static_cast<int>(axes.size()) < dim) axes.push_back({1.0});
    if (static_cast<int>(axes.size()) != dim) throw CLI::ValidationError("poly has too many axes for --dim");
    return TestFunction::polynomial(axes);
  }
  throw CLI::ValidationError("unknown function kind '" + kind + "'");
}

std::vector<double> parse_grid(const std::string& s) {
  // lo:hi:step
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw CLI::ValidationError("grid must be lo:hi:step, got '" + s + "'");
  const double lo = std::stod(parts[0]), hi = std::stod(parts[1]), step = std::stod(parts[2]);
  if (!(step > 0.0) || hi < lo) throw CLI::ValidationError("bad grid '" + s + "'");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = lo + i * step;
    if (v > hi + 1e-12 * std::max(1.0, std::fabs(hi))) break;
    out.push_back(v);
  }
  return out;
}

std::vector<Point> tensor_grid(const std::vector<double>& axis, int dim) {
  std::vector<Point> pts;
  std::size_t count = axis.size();
  for (int i = 1; i < dim; ++i) count *= axis.size();
  pts.reserve(count);
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat;
    Point p(dim);
    for (int k = 0; k < dim; ++k) {
      p.set(k, axis[rem % axis.size()]);
      rem /= axis.size();
    }
    pts.push_back(p);
  }
  return pts;
}

ConeSpec parse_cone(const std::string& s) {
  if (s == "reduced") return ConeSpec::reduced();
  const auto v = parse_csv_doubles(s);
  if (v.size() != 2) throw CLI::ValidationError("cone must be 'A,a' or 'reduced'");
  return ConeSpec(v[0], v[1]);
}

struct Output {
  std::string path;
  std::ostream* fallback = nullptr;
  void write(const std::string& text) const {
    if (path.empty()) {
      (*fallback) << text;
      if (!text.empty() && text.back() != '\n') (*fallback) << '\n';
      return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }
};

int resolve_workers(bool given, int value) {
  if (given) return value;
  if (const char* env = std::getenv("GMF_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 0) return static_cast<int>(v);
  }
  return 0;  // auto
}

ojson meta_block(std::uint64_t seed, const ojson& parameters) {
  ojson m;
  m["version"] = kVersion;
  m["seed"] = seed;
  m["parameters"] = parameters;
  return m;
}

std::string csv_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian maximal function toolkit"};
  app.require_subcommand(1);

  int dim = 1;
  std::uint64_t seed = 0;
  int workers_value = 0;
  std::string output_path;
  std::string format = "json";
  app.add_option("--dim", dim, "ambient dimension (1..3)")->check(CLI::Range(1, 3));
  app.add_option("--seed", seed, "RNG seed for verification suites");
  auto* workers_opt = app.add_option("--workers", workers_value, "worker threads (0 = auto)")
                          ->check(CLI::Range(0, 1024));
  app.add_option("-o,--output", output_path, "write the report to this file instead of stdout");
  app.add_option("--format", format, "report format for scan")->check(CLI::IsMember({"json", "csv"}));

  // kernel
  auto* sub_kernel = app.add_subcommand("kernel", "evaluate the Mehler kernel in log space");
  sub_kernel->fallthrough();
  double k_t = 1.0;
  std::string k_x = "0", k_y = "0", k_form = "symmetric";
  sub_kernel->add_option("--t", k_t, "time parameter")->required();
  sub_kernel->add_option("--x", k_x, "first point, comma-separated");
  sub_kernel->add_option("--y", k_y, "second point, comma-separated");
  sub_kernel->add_option("--form", k_form, "evaluation form")->check(CLI::IsMember({"explicit", "symmetric"}));

  // rule
  auto* sub_rule = app.add_subcommand("rule", "dump a Gauss-Hermite rule as CSV");
  sub_rule->fallthrough();
  int r_order = 8;
  sub_rule->add_option("--order", r_order, "points per axis")->required()->check(CLI::Range(1, 200));

  // apply
  auto* sub_apply = app.add_subcommand("apply", "apply the Ornstein-Uhlenbeck semigroup");
  sub_apply->fallthrough();
  std::string a_fn = "const:1", a_y = "0", a_method = "substitution";
  double a_s = 1.0, a_tol = 1e-8;
  int a_order = 32;
  sub_apply->add_option("--fn", a_fn, "function spec (kind:params)")->required();
  sub_apply->add_option("--s", a_s, "semigroup time")->required();
  sub_apply->add_option("--y", a_y, "evaluation point");
  sub_apply->add_option("--method", a_method)->check(CLI::IsMember({"substitution", "kernel"}));
  sub_apply->add_option("--order", a_order, "Gauss-Hermite order")->check(CLI::Range(1, 200));
  sub_apply->add_option("--tol", a_tol, "kernel-path tolerance");

  // maximal
  auto* sub_max = app.add_subcommand("maximal", "evaluate a maximal function at a point");
  sub_max->fallthrough();
  std::string m_op = "hl", m_fn = "ball:0,1", m_x = "0", m_cone = "1,1";
  int m_order = 32;
  SearchParams m_search;
  sub_max->add_option("--op", m_op, "operator")->check(CLI::IsMember({"hl", "nt"}));
  sub_max->add_option("--fn", m_fn, "function spec")->required();
  sub_max->add_option("--x", m_x, "base point");
  sub_max->add_option("--cone", m_cone, "cone 'A,a' or 'reduced' (nt only)");
  sub_max->add_option("--order", m_order, "Gauss-Hermite order (nt only)")->check(CLI::Range(1, 200));
  sub_max->add_option("--coarse-grid", m_search.coarse_grid, "coarse grid points per axis");
  sub_max->add_option("--refine-rounds", m_search.refine_rounds);
  sub_max->add_option("--shrink", m_search.shrink);
  sub_max->add_option("--t-floor", m_search.t_floor);

  // verify
  auto* sub_verify = app.add_subcommand("verify", "run a lemma verification suite");
  sub_verify->fallthrough();
  std::string v_lemma = "L1a";
  long v_samples = 100000;
  LemmaParams v_params;
  sub_verify->add_option("--lemma", v_lemma, "lemma id")->required()
      ->check(CLI::IsMember({"L1a", "L1b", "L2", "L3", "L3shift", "L4"}));
  sub_verify->add_option("--samples", v_samples, "sample count (>= 1000)");
  sub_verify->add_option("--A", v_params.aperture, "aperture");
  sub_verify->add_option("--a", v_params.cutoff, "cutoff");
  sub_verify->add_option("--alpha", v_params.alpha, "alpha");

  // scan
  auto* sub_scan = app.add_subcommand("scan", "ratio scan of nt against hl");
  sub_scan->fallthrough();
  std::string s_cone = "1,1", s_xs = "-3:3:0.5", s_corpus = "default";
  int s_order = 32;
  SearchParams s_search;
  sub_scan->add_option("--cone", s_cone, "cone 'A,a' or 'reduced'");
  sub_scan->add_option("--xs", s_xs, "per-axis grid lo:hi:step");
  sub_scan->add_option("--corpus", s_corpus, "'default' or ';'-separated function specs");
  sub_scan->add_option("--order", s_order, "Gauss-Hermite order")->check(CLI::Range(1, 200));
  sub_scan->add_option("--coarse-grid", s_search.coarse_grid, "coarse grid points per axis");
  sub_scan->add_option("--refine-rounds", s_search.refine_rounds);
  sub_scan->add_option("--shrink", s_search.shrink);
  sub_scan->add_option("--t-floor", s_search.t_floor);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("gmf");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Output sink{output_path, &out};
  const int workers = resolve_workers(workers_opt->count() > 0, workers_value);
  v_params.dim = dim;
  v_params.workers = workers;

  try {
    if (sub_kernel->parsed()) {
      const Point x = parse_point(k_x, dim), y = parse_point(k_y, dim);
      const MehlerForm form = k_form == "explicit" ? MehlerForm::Explicit : MehlerForm::Symmetric;
      const LogValue lv = mehler_log(k_t, x, y, form);
      ojson params{{"t", k_t}, {"x", k_x}, {"y", k_y}, {"form", k_form}, {"dim", dim}};
      ojson j;
      j["meta"] = meta_block(seed, params);
      j["log_val"] = lv.log_val;
      j["value"] = std::exp(lv.log_val);
      sink.write(j.dump(2));
      return 0;
    }

    if (sub_rule->parsed()) {
      const QuadratureRule rule = hermite_rule(r_order, dim);
      std::ostringstream os;
      for (int i = 0; i < dim; ++i) os << "x" << i << ",";
      os << "weight\n";
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (int k = 0; k < dim; ++k) os << csv_double(rule.nodes[i][k]) << ",";
        os << csv_double(rule.weights[i]) << "\n";
      }
      sink.write(os.str());
      return 0;
    }

    if (sub_apply->parsed()) {
      const TestFunction u = parse_function(a_fn, dim);
      const Point y = parse_point(a_y, dim);
      const OuMethod method = a_method == "kernel" ? OuMethod::Kernel : OuMethod::Substitution;
      OuParams op;
      op.order = a_order;
      op.tol = a_tol;
      const SemigroupEval ev = ou_apply(u, a_s, y, method, op);
      ojson params{{"fn", a_fn}, {"s", a_s}, {"y", a_y}, {"method", a_method},
                   {"order", a_order}, {"tol", a_tol}, {"dim", dim}};
      ojson j;
      j["meta"] = meta_block(seed, params);
      j.update(to_json(ev));
      sink.write(j.dump(2));
      return 0;
    }

    if (sub_max->parsed()) {
      const TestFunction u = parse_function(m_fn, dim);
      const Point x = parse_point(m_x, dim);
      MaximalResult res;
      bool cone_search = m_op == "nt";
      if (cone_search)
        res = nt_maximal(u, x, parse_cone(m_cone), m_search, m_order);
      else
        res = hl_maximal(u, x, m_search);
      ojson params{{"op", m_op},         {"fn", m_fn},
                   {"x", m_x},           {"cone", m_cone},
                   {"order", m_order},   {"coarse_grid", m_search.coarse_grid},
                   {"refine_rounds", m_search.refine_rounds}, {"shrink", m_search.shrink},
                   {"t_floor", m_search.t_floor},             {"dim", dim}};
      ojson j;
      j["meta"] = meta_block(seed, params);
      j.update(to_json(res, cone_search));
      sink.write(j.dump(2));
      return 0;
    }

    if (sub_verify->parsed()) {
      const LemmaId id = lemma_from_name(v_lemma);
      const LemmaReport rep = verify_lemma(id, v_samples, seed, v_params);
      ojson params{{"lemma", v_lemma}, {"samples", v_samples}, {"A", v_params.aperture},
                   {"a", v_params.cutoff}, {"alpha", v_params.alpha}, {"dim", dim}};
      ojson j;
      j["meta"] = meta_block(seed, params);
      j["report"] = to_json(rep);
      sink.write(j.dump(2));
      return rep.violations > 0 ? 1 : 0;
    }

    if (sub_scan->parsed()) {
      const ConeSpec cone = parse_cone(s_cone);
      std::vector<TestFunction> corpus;
      if (s_corpus == "default") {
        corpus = default_corpus(dim);
      } else {
        std::stringstream ss(s_corpus);
        std::string part;
        while (std::getline(ss, part, ';')) corpus.push_back(parse_function(part, dim));
      }
      const std::vector<Point> xs = tensor_grid(parse_grid(s_xs), dim);
      const ScanResult res = ratio_scan(corpus, xs, cone, s_search, s_order, workers);
      if (format == "csv") {
        std::ostringstream os;
        for (int i = 0; i < dim; ++i) os << "x" << i << ",";
        os << "nt,hl,ratio\n";
        for (const auto& rep : res.reports)
          for (const auto& pt : rep.points) {
            for (int k = 0; k < dim; ++k) os << csv_double(pt.x[k]) << ",";
            os << csv_double(pt.nt_value) << "," << csv_double(pt.hl_value) << ","
               << csv_double(pt.ratio) << "\n";
          }
        sink.write(os.str());
      } else {
        ojson params{{"cone", s_cone},   {"xs", s_xs},
                     {"corpus", s_corpus}, {"order", s_order},
                     {"coarse_grid", s_search.coarse_grid}, {"refine_rounds", s_search.refine_rounds},
                     {"shrink", s_search.shrink},           {"t_floor", s_search.t_floor},
                     {"dim", dim}};
        ojson j;
        j["meta"] = meta_block(seed, params);
        j.update(to_json(res));
        sink.write(j.dump(2));
      }
      return res.passed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  err << "error: no subcommand\n";
  return 2;
}

}  // namespace gmf::cli
