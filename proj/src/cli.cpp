#include "gconj/cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "gconj/dataset.hpp"
#include "gconj/env.hpp"
#include "gconj/search.hpp"
#include "gconj/service.hpp"

#ifndef GCONJ_VERSION
#define GCONJ_VERSION "dev"
#endif

namespace gconj::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// key=value pairs from a config file or the "config" object of a manifest.
std::vector<std::pair<std::string, std::string>> load_config(const fs::path& path) {
  const std::string text = read_file(path);
  std::vector<std::pair<std::string, std::string>> pairs;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
    const Json& cfg = j.contains("config") ? j["config"] : j;
    if (!cfg.is_object()) throw ConfigError(path.string() + ": no config object");
    for (const auto& [key, value] : cfg.items()) {
      if (value.is_null()) continue;
      pairs.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
    }
    return pairs;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto l = s.find_first_not_of(" \t\r");
      const auto r = s.find_last_not_of(" \t\r");
      return l == std::string::npos ? std::string() : s.substr(l, r - l + 1);
    };
    pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return pairs;
}

bool truthy(const std::string& v) { return v == "true" || v == "1" || v == "yes" || v == "on"; }

/// Command line with config-file entries placed before the user's flags, so
/// the user's (last) values win.
std::vector<std::string> merge_config(CLI::App& sub, const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::vector<std::string> merged;
  for (const auto& [key, value] : load_config(*path)) {
    if (key == "config") continue;
    const CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw ConfigError("unknown config key '" + key + "'");
    if (opt->get_type_size() == 0) {
      if (truthy(value)) merged.push_back("--" + key);
    } else {
      merged.push_back("--" + key + "=" + value);
    }
  }
  merged.insert(merged.end(), args.begin(), args.end());
  return merged;
}

void write_manifest(const fs::path& dir, const std::string& command, const Json& config,
                    std::uint64_t seed, const std::string& started, const Json& outcome) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  Json m{{"command", command},
         {"config", config},
         {"seed", seed},
         {"version", GCONJ_VERSION},
         {"started_at", started},
         {"finished_at", utc_now()},
         {"outcome", outcome}};
  std::ofstream f(dir / "manifest.json");
  f << m.dump(2) << '\n';
  if (!f) throw IoError("cannot write " + (dir / "manifest.json").string());
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// ---------------------------------------------------------------- search

struct SearchOptions {
  std::string conjecture = "wagner21";
  std::string game = "linear";
  int n = 0;
  std::string algo = "ce";
  int episodes = 200;
  int iterations = 500;
  double elite = 0.1;
  double super_fraction = 0.03;
  double lr = 0.01;
  int batch_size = 32;
  std::string hidden = "128,64";
  std::string reward = "sparse";
  bool normalize = false;
  std::string initial = "complete";
  bool self_loops = false;
  bool check_every_step = false;
  int horizon = 0;
  int start_node = 0;
  std::string edge_order = "lexicographic";
  std::uint64_t seed = 0;
  int threads = default_threads();
  std::string out = "gconj-out";
  bool quiet = false;
};

void add_search_options(CLI::App& sub, SearchOptions& o) {
  sub.add_option("--conjecture", o.conjecture, "Registered conjecture name")->capture_default_str();
  sub.add_option("--game", o.game, "linear | local | global | flip")->capture_default_str();
  sub.add_option("--n", o.n, "Node count")->required();
  sub.add_option("--algo", o.algo, "ce | random")->capture_default_str();
  sub.add_option("--episodes", o.episodes, "Episodes per CE iteration, or total for random")
      ->capture_default_str();
  sub.add_option("--iterations", o.iterations, "CE iterations")->capture_default_str();
  sub.add_option("--elite", o.elite, "CE elite fraction")->capture_default_str();
  sub.add_option("--super", o.super_fraction, "CE super-session fraction")->capture_default_str();
  sub.add_option("--lr", o.lr, "CE learning rate")->capture_default_str();
  sub.add_option("--batch-size", o.batch_size, "CE minibatch size (0 = full batch)")
      ->capture_default_str();
  sub.add_option("--hidden", o.hidden, "Hidden layer widths, comma separated")
      ->capture_default_str();
  sub.add_option("--reward", o.reward, "sparse | incremental")->capture_default_str();
  sub.add_flag("--normalize", o.normalize, "Divide scores by n");
  sub.add_option("--initial", o.initial, "empty | complete | g6:PATH")->capture_default_str();
  sub.add_flag("--self-loops", o.self_loops, "Allow self-loops");
  sub.add_flag("--check-every-step", o.check_every_step, "Verify counterexamples at every step");
  sub.add_option("--horizon", o.horizon, "Episode length (default: number of edge slots)");
  sub.add_option("--start-node", o.start_node, "Local game start node")->capture_default_str();
  sub.add_option("--edge-order", o.edge_order, "lexicographic | clique")->capture_default_str();
  sub.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  sub.add_option("--threads", o.threads, "Worker threads (default: all cores)");
  sub.add_option("--out", o.out, "Output directory")->capture_default_str();
  sub.add_flag("--quiet", o.quiet, "Only print the summary");
}

Json search_config_json(const SearchOptions& o) {
  Json j{{"conjecture", o.conjecture}, {"game", o.game},
         {"n", o.n},                   {"algo", o.algo},
         {"episodes", o.episodes},     {"iterations", o.iterations},
         {"elite", o.elite},           {"super", o.super_fraction},
         {"lr", o.lr},                 {"batch-size", o.batch_size},
         {"hidden", o.hidden},         {"reward", o.reward},
         {"normalize", o.normalize},   {"initial", o.initial},
         {"self-loops", o.self_loops}, {"check-every-step", o.check_every_step},
         {"start-node", o.start_node}, {"edge-order", o.edge_order},
         {"seed", o.seed},             {"threads", o.threads},
         {"out", o.out}};
  j["horizon"] = o.horizon > 0 ? Json(o.horizon) : Json(nullptr);
  return j;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

EnvConfig env_from(const SearchOptions& o) {
  EnvConfig cfg;
  if (o.n < 1 || o.n > kMaxNodes) {
    throw ConfigError("--n must be in [1, " + std::to_string(kMaxNodes) + "]");
  }
  cfg.n = o.n;
  cfg.game = parse_game(o.game);
  cfg.conjecture =
      std::make_shared<const Conjecture>(ConjectureRegistry::builtin().make(o.conjecture, o.n));
  cfg.reward_mode = parse_reward_mode(o.reward);
  cfg.normalize = o.normalize;
  cfg.allow_self_loops = o.self_loops;
  cfg.check_every_step = o.check_every_step;
  if (o.horizon > 0) cfg.horizon = o.horizon;
  cfg.start_node = o.start_node;
  if (o.edge_order == "lexicographic") {
    cfg.edge_order = EdgeOrder::lexicographic;
  } else if (o.edge_order == "clique") {
    cfg.edge_order = EdgeOrder::clique;
  } else {
    throw ConfigError("unknown edge order '" + o.edge_order + "'");
  }
  if (o.initial == "empty") {
    cfg.initial = InitialKind::empty;
  } else if (o.initial == "complete") {
    cfg.initial = InitialKind::complete;
  } else if (o.initial.rfind("g6:", 0) == 0) {
    std::istringstream in(read_file(o.initial.substr(3)));
    std::string line;
    while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    cfg.initial = new_graph_from_g6(o.n, line, o.self_loops);
  } else {
    throw ConfigError("--initial must be empty, complete or g6:PATH");
  }
  cfg.validate();
  return cfg;
}

int cmd_search(const SearchOptions& o, std::ostream& out, std::ostream& err) {
  const std::string started = utc_now();
  const EnvConfig env = env_from(o);
  if (o.algo != "ce" && o.algo != "random") throw ConfigError("unknown algo '" + o.algo + "'");
  if (o.threads < 1) throw ConfigError("--threads must be >= 1");

  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const fs::path results = dir / "results.tsv";
  const fs::path counterexamples = dir / "counterexamples.tsv";
  std::ofstream progress(results);
  if (!progress) throw IoError("cannot write " + results.string());

  EpisodeTrace best;
  std::optional<CounterexampleCheck> found;
  int iterations_run = 0;

  if (o.algo == "ce") {
    CEConfig ce;
    ce.episodes_per_iteration = o.episodes;
    ce.elite_fraction = o.elite;
    ce.super_fraction = o.super_fraction;
    ce.learning_rate = o.lr;
    ce.batch_size = o.batch_size;
    ce.iterations = o.iterations;
    ce.hidden = parse_int_list(o.hidden, "--hidden");
    ce.seed = o.seed;
    ce.threads = o.threads;
    ce.results_path = counterexamples;
    ce.validate();
    progress << "iteration\tbest\tbatch_best\telite_threshold\tloss\n";
    if (!o.quiet) out << "iteration\tbest\tbatch_best\n";
    CEResult r = ce_train(ce, env, [&](const IterationReport& rep) {
      progress << rep.iteration << '\t' << num(rep.best_score) << '\t' << num(rep.batch_best)
               << '\t' << num(rep.elite_threshold) << '\t' << num(rep.loss) << '\n';
      if (!o.quiet) {
        out << rep.iteration << '\t' << num(rep.best_score) << '\t' << num(rep.batch_best) << '\n';
        out.flush();
      }
    });
    best = std::move(r.best);
    found = r.counterexample;
    iterations_run = r.iterations_run;
  } else {
    if (o.episodes < 1) throw ConfigError("--episodes must be >= 1");
    best = random_search(env, o.episodes, o.seed, o.threads);
    progress << "episodes\tbest\n" << o.episodes << '\t' << num(best.cumulative_reward) << '\n';
    const auto check = check_counterexample(*env.conjecture, best.terminal_graph);
    if (check.verdict == Verdict::verified) {
      found = check;
      std::ofstream f(counterexamples, std::ios::app);
      f << format_result_line(env.conjecture->name, env.n, *check.g6, *check.tight_score, best.seed)
        << '\n';
      if (!f) throw IoError("cannot write " + counterexamples.string());
    }
  }
  if (!progress) throw IoError("cannot write " + results.string());

  const Graph terminal = best.terminal_graph.without_self_loops();
  const std::string g6 = encode_g6(terminal);
  out << "best " << num(best.cumulative_reward) << ' ' << g6 << '\n';
  Json outcome{{"best_score", best.cumulative_reward},
               {"best_g6", g6},
               {"best_seed", best.seed},
               {"iterations_run", iterations_run}};
  if (found) {
    out << "counterexample " << *found->g6 << ' ' << num(*found->tight_score) << '\n';
    outcome["counterexample"] = {
        {"g6", *found->g6}, {"score", found->score}, {"tight_score", *found->tight_score}};
  } else {
    outcome["counterexample"] = nullptr;
  }
  const int code = found ? kCounterexample : kOk;
  outcome["exit_code"] = code;
  write_manifest(dir, "search", search_config_json(o), o.seed, started, outcome);
  (void)err;
  return code;
}

// ------------------------------------------------------------ invariants

struct InvariantOptions {
  std::string input = "-";
  std::string out;
};

int cmd_invariants(const InvariantOptions& o, std::ostream& out, std::istream& in) {
  const std::string started = utc_now();
  std::ifstream file;
  std::istream* src = &in;
  if (o.input != "-") {
    file.open(o.input);
    if (!file) throw IoError("cannot read " + o.input);
    src = &file;
  }
  const auto& reg = ConjectureRegistry::builtin();
  const auto names = reg.names();
  out << "g6\tn\tedges\tconnected\tlambda1\tmatching\tlaplacian";
  for (const auto& name : names) out << '\t' << name;
  out << '\n';

  std::string line;
  int lineno = 0;
  std::size_t graphs = 0;
  while (std::getline(*src, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    Graph g(1);
    try {
      g = decode_g6(line);
    } catch (const G6Error& e) {
      throw G6Error("line " + std::to_string(lineno) + ": " + e.what());
    }
    const Spectrum lap = laplacian_spectrum(g);
    out << encode_g6(g) << '\t' << g.node_count() << '\t' << g.edge_count() << '\t'
        << (is_connected(g) ? 1 : 0) << '\t' << num(adjacency_spectral_radius(g)) << '\t'
        << max_matching(g).size << '\t' << format_spectrum_line(lap);
    for (const auto& name : names) {
      out << '\t';
      try {
        out << num(reg.make(name, g.node_count()).score(g));
      } catch (const std::invalid_argument&) {
        out << '-';
      }
    }
    out << '\n';
    ++graphs;
  }
  if (src->bad()) throw IoError("read error on " + o.input);
  if (!o.out.empty()) {
    write_manifest(o.out, "invariants", Json{{"input", o.input}, {"out", o.out}}, 0, started,
                   Json{{"graphs", graphs}, {"exit_code", 0}});
  }
  return kOk;
}

// --------------------------------------------------------------- dataset

struct DatasetOptions {
  int n = 11;
  std::string models = "er,ws,hog,ba";
  std::string hog;
  std::uint64_t seed = 0;
  int threads = default_threads();
  std::string out = "gconj-out";
};

int cmd_dataset(const DatasetOptions& o, std::ostream& out, std::ostream& err) {
  const std::string started = utc_now();
  DatasetRecipe r;
  r.n = o.n;
  r.seed = o.seed;
  r.threads = o.threads;
  r.erdos_renyi = r.watts_strogatz = r.house_of_graphs = r.barabasi_albert = false;
  std::stringstream ss(o.models);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "er") {
      r.erdos_renyi = true;
    } else if (item == "ws") {
      r.watts_strogatz = true;
    } else if (item == "hog") {
      r.house_of_graphs = true;
    } else if (item == "ba") {
      r.barabasi_albert = true;
    } else {
      throw ConfigError("unknown model '" + item + "' (expected er, ws, hog, ba)");
    }
  }
  if (o.n < 2 || o.n > kMaxNodes) throw ConfigError("--n must be in [2, 64]");
  if (o.threads < 1) throw ConfigError("--threads must be >= 1");
  if (!o.hog.empty()) {
    std::ifstream f(o.hog);
    if (!f) throw IoError("cannot read " + o.hog);
    r.hog_graphs = read_g6_stream(f);
  } else {
    if (r.house_of_graphs) err << "warning: no --hog file given, House of Graphs portion is empty\n";
    if (r.barabasi_albert) {
      err << "warning: no --hog file given, Barabasi-Albert runs start from synthetic seeds "
             "(complete, cycle, star, path on "
          << r.ba_seed_min_nodes << ".." << r.ba_seed_max_nodes << " nodes)\n";
    }
  }

  const Dataset ds = build_dataset(r);
  const DatasetFiles files = write_dataset(ds, o.n, o.out);
  out << "erdos_renyi\t" << ds.counts.erdos_renyi << '\n'
      << "watts_strogatz\t" << ds.counts.watts_strogatz << '\n'
      << "house_of_graphs\t" << ds.counts.house_of_graphs << '\n'
      << "barabasi_albert\t" << ds.counts.barabasi_albert << '\n'
      << "total\t" << ds.counts.total() << '\n'
      << "wl_positive_pairs\t" << ds.wl_positive_pairs.size() << '\n';

  Json config{{"n", o.n},       {"models", o.models}, {"hog", o.hog},
              {"seed", o.seed}, {"threads", o.threads}, {"out", o.out}};
  Json outcome{{"erdos_renyi", ds.counts.erdos_renyi},
               {"watts_strogatz", ds.counts.watts_strogatz},
               {"house_of_graphs", ds.counts.house_of_graphs},
               {"barabasi_albert", ds.counts.barabasi_albert},
               {"synthetic_ba_seeds", ds.counts.synthetic_ba_seeds},
               {"wl_positive_pairs", ds.wl_positive_pairs.size()},
               {"files",
                {files.graphs.filename().string(), files.labels.filename().string(),
                 files.wl_report.filename().string()}},
               {"exit_code", 0}};
  write_manifest(o.out, "dataset", config, o.seed, started, outcome);
  return kOk;
}

// ----------------------------------------------------------------- serve

struct ServeOptions {
  std::string bind = "127.0.0.1";
  int port = 8080;
  int idle_timeout = 3600;
  std::string static_dir;
};

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

int cmd_serve(const ServeOptions& o, std::ostream& out) {
  if (o.idle_timeout < 1) throw ConfigError("--idle-timeout must be >= 1");
  service::SessionManager sessions{std::chrono::seconds(o.idle_timeout)};
  service::Server server(sessions, {o.bind, o.port, o.static_dir});
  int port = 0;
  try {
    port = server.bind();
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  out << "listening on http://" << o.bind << ':' << port << '\n';
  out.flush();
  g_interrupted = false;
  auto prev_int = std::signal(SIGINT, on_signal);
  auto prev_term = std::signal(SIGTERM, on_signal);
  std::atomic<bool> finished{false};
  std::thread watcher([&] {
    while (!finished) {
      if (g_interrupted) {
        sessions.shutdown();
        server.stop();
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  });
  server.listen();
  finished = true;
  watcher.join();
  std::signal(SIGINT, prev_int);
  std::signal(SIGTERM, prev_term);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app{"Conjecture search engine over graph-building games", "gconj"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", GCONJ_VERSION);

  SearchOptions search;
  InvariantOptions inv;
  DatasetOptions data;
  ServeOptions serve;
  std::string config_path;

  CLI::App* s = app.add_subcommand("search", "Run CE or random search");
  add_search_options(*s, search);
  s->add_option("--config", config_path, "key=value file or manifest.json");

  CLI::App* i = app.add_subcommand("invariants", "Invariants and scores for graph6 input");
  i->add_option("--input", inv.input, "graph6 file, - for stdin")->capture_default_str();
  i->add_option("--out", inv.out, "Write a manifest into this directory");
  i->add_option("--config", config_path, "key=value file or manifest.json");

  CLI::App* d = app.add_subcommand("dataset", "Build the Laplacian-spectrum dataset");
  d->add_option("--n", data.n, "Node count")->capture_default_str();
  d->add_option("--models", data.models, "Comma list of er, ws, hog, ba")->capture_default_str();
  d->add_option("--hog", data.hog, "House of Graphs graph6 file");
  d->add_option("--seed", data.seed, "Master seed")->capture_default_str();
  d->add_option("--threads", data.threads, "Worker threads (default: all cores)");
  d->add_option("--out", data.out, "Output directory")->capture_default_str();
  d->add_option("--config", config_path, "key=value file or manifest.json");

  CLI::App* v = app.add_subcommand("serve", "Serve interactive sessions over HTTP");
  v->add_option("--bind", serve.bind, "Bind address")->envname("GCONJ_BIND")->capture_default_str();
  v->add_option("--port", serve.port, "Port (0 = any free port)")
      ->envname("GCONJ_PORT")
      ->capture_default_str();
  v->add_option("--idle-timeout", serve.idle_timeout, "Seconds before idle sessions expire")
      ->capture_default_str();
  v->add_option("--static", serve.static_dir, "Directory served at /");
  v->add_option("--config", config_path, "key=value file or manifest.json");

  try {
    std::vector<std::string> argv = args;
    if (!argv.empty()) {
      if (CLI::App* sub = app.get_subcommand_no_throw(argv.front())) {
        std::vector<std::string> rest(argv.begin() + 1, argv.end());
        rest = merge_config(*sub, rest);
        argv.assign(1, args.front());
        argv.insert(argv.end(), rest.begin(), rest.end());
      }
    }
    std::reverse(argv.begin(), argv.end());
    try {
      app.parse(argv);
    } catch (const CLI::CallForHelp&) {
      const CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
      out << target->help();
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out << GCONJ_VERSION << '\n';
      return kOk;
    } catch (const CLI::ParseError& e) {
      const CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
      err << "error: " << e.what() << "\n\n" << target->help();
      return kConfigError;
    }

    if (s->parsed()) return cmd_search(search, out, err);
    if (i->parsed()) return cmd_invariants(inv, out, in);
    if (d->parsed()) return cmd_dataset(data, out, err);
    if (v->parsed()) return cmd_serve(serve, out);
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const G6Error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace gconj::cli
