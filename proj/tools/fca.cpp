#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "fca/concepts.hpp"
#include "fca/context.hpp"
#include "fca/exploration.hpp"
#include "fca/implications.hpp"
#include "fca/io.hpp"
#include "fca/lattice.hpp"
#include "fca/relation.hpp"
#include "fca/serialize.hpp"
#include "fca/service.hpp"

namespace {

using nlohmann::json;

// Missing input files are usage errors (exit 2), unlike malformed content.
struct MissingFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open '" + path + "'");
  return in;
}

fca::Context load_context(const std::string& path) {
  auto in = open(path);
  return fca::io::has_suffix(path, ".csv") ? fca::io::read_csv(in) : fca::io::read_burmeister(in);
}

fca::io::ManyValuedInput load_many_valued(const std::string& path) {
  auto in = open(path);
  return fca::io::read_many_valued_csv(in);
}

fca::Relation load_relation(const std::string& path) {
  auto in = open(path);
  return fca::io::read_relation(in);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw MissingFile("cannot write '" + path + "'");
    }
  }
  std::ostream& operator()() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

json props_json(const fca::RelationProperties& p) {
  return {{"reflexive", p.reflexive},         {"antireflexive", p.antireflexive}, {"symmetric", p.symmetric},
          {"asymmetric", p.asymmetric},       {"antisymmetric", p.antisymmetric}, {"transitive", p.transitive},
          {"linear", p.linear}};
}

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

void explore(const fca::Context& seed, std::istream& in, std::ostream& out) {
  fca::ExplorationSession s(seed.attributes(), seed);
  std::string line;
  while (!s.finished()) {
    const auto& p = *s.pending();
    out << "Does every object with " << joined(seed.names(p.premise)) << " also have " << joined(seed.names(p.added()))
        << "? [y/n] " << std::flush;
    if (!std::getline(in, line)) break;
    if (line == "y" || line == "yes") {
      s.accept();
      continue;
    }
    if (line != "n" && line != "no") {
      out << "answer y or n\n";
      continue;
    }
    out << "counterexample name: " << std::flush;
    std::string name;
    if (!std::getline(in, name)) break;
    out << "its attributes (comma separated): " << std::flush;
    if (!std::getline(in, line)) break;
    try {
      s.reject(name, s.examples().attribute_set(split_names(line)));
    } catch (const fca::Error& e) {
      out << fca::to_string(e.code()) << ": " << e.what() << "\n";
    }
  }
  out << (s.finished() ? "exploration finished\n" : "exploration stopped\n");
  out << fca::io::write_implications(s.accepted(), s.universe());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal concept analysis toolkit"};
  app.require_subcommand(1);
  std::string input, output;
  auto add_io = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("file", input, what)->required();
    return sub->add_option("-o,--output", output, "Write the result here instead of stdout");
  };

  auto* relation = app.add_subcommand("relation", "Binary relation properties and operations");
  add_io(relation, "Relation matrix file");
  std::string rel_op = "props";
  bool reflexive = false;
  relation->add_option("--op", rel_op, "props | closure | invert | classes")
      ->check(CLI::IsMember({"props", "closure", "invert", "classes"}));
  relation->add_flag("--reflexive", reflexive, "Reflexive-transitive closure");

  auto* lattice_check = app.add_subcommand("lattice-check", "Check whether a poset is a lattice and analyse it");
  add_io(lattice_check, "Partial order matrix file");

  auto* concepts = app.add_subcommand("concepts", "Enumerate formal concepts");
  add_io(concepts, "Context file (.cxt or .csv)");
  std::string strategy = "auto", format = "json";
  bool stream = false, sort_items = false;
  concepts->add_option("--strategy", strategy, "auto | bottom-up | top-down")
      ->check(CLI::IsMember({"auto", "bottom-up", "top-down"}));
  concepts->add_flag("--stream", stream, "Emit each concept on backtrack as soon as it is final (JSON lines)");
  concepts->add_option("--format", format, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));
  concepts->add_flag("--sort", sort_items, "Process items by ascending cardinality");

  auto* lattice = app.add_subcommand("lattice", "Concept lattice as a DOT diagram");
  auto* lattice_out = add_io(lattice, "Context file");
  std::string dot_path, labels = "reduced";
  lattice->add_option("--dot", dot_path, "DOT output path")->excludes(lattice_out);
  lattice->add_option("--labels", labels, "full | reduced")->check(CLI::IsMember({"full", "reduced"}));
  lattice->add_option("--strategy", strategy, "auto | bottom-up | top-down")
      ->check(CLI::IsMember({"auto", "bottom-up", "top-down"}));

  auto* basis = app.add_subcommand("basis", "Duquenne-Guigues basis");
  add_io(basis, "Context file");
  std::string variant = "plain";
  basis->add_option("--variant", variant, "plain | optimized")->check(CLI::IsMember({"plain", "optimized"}));

  auto* direct = app.add_subcommand("direct-basis", "Canonical direct basis from proper premises");
  add_io(direct, "Context file");

  auto* close = app.add_subcommand("close", "Close an attribute set");
  add_io(close, "Context file");
  std::string set_arg, basis_path;
  close->add_option("--set", set_arg, "Comma separated attribute names")->required();
  close->add_option("--basis", basis_path, "Close under the implications in this file instead of the context");

  auto* clarify = app.add_subcommand("clarify", "Merge duplicate rows and columns");
  add_io(clarify, "Context file");
  auto* reduce = app.add_subcommand("reduce", "Remove reducible attributes and objects");
  add_io(reduce, "Context file");

  auto* scale = app.add_subcommand("scale", "Scale a many-valued CSV context");
  add_io(scale, "Many-valued CSV file");
  std::string method = "nominal";
  scale->add_option("--method", method, "nominal | interordinal");

  auto* kn = app.add_subcommand("kn", "Pair context whose implications are the functional dependencies");
  add_io(kn, "Many-valued CSV file");
  auto* kw = app.add_subcommand("kw", "Many-valued context whose dependencies are the implications");
  add_io(kw, "Context file");

  auto* bench = app.add_subcommand("bench", "Measure enumeration delay");
  add_io(bench, "Context file");
  int repeat = 1;
  bench->add_option("--repeat", repeat, "Timing repetitions")->check(CLI::PositiveNumber);
  bench->add_option("--strategy", strategy, "auto | bottom-up | top-down")
      ->check(CLI::IsMember({"auto", "bottom-up", "top-down"}));

  auto* explore_cmd = app.add_subcommand("explore", "Interactive attribute exploration on stdin");
  add_io(explore_cmd, "Seed context file");

  auto* serve = app.add_subcommand("serve", "Run the exploration HTTP service");
  int port = 8080;
  std::string host = "127.0.0.1", data_dir, static_dir = "webui/dist";
  serve->add_option("--port", port, "Port to listen on");
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--data-dir", data_dir, "Directory for session event logs");
  serve->add_option("--static", static_dir, "Web UI assets to serve at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (relation->parsed()) {
      const auto r = load_relation(input);
      Output out(output);
      if (rel_op == "props") {
        out() << props_json(fca::check_properties(r)).dump(2) << "\n";
      } else if (rel_op == "closure") {
        out() << fca::io::write_relation(fca::transitive_closure(r, reflexive));
      } else if (rel_op == "invert") {
        out() << fca::io::write_relation(fca::inverse(r));
      } else {
        const auto p = fca::equivalence_classes(r);
        out() << json(p.blocks).dump() << "\n";
      }
    } else if (lattice_check->parsed()) {
      const auto l = fca::lattice_from_poset(fca::Poset(load_relation(input)));
      const auto axioms = fca::verify_axioms(l);
      const auto irr = fca::irreducibles(l);
      const auto dist = fca::is_distributive(l);
      const auto mod = fca::is_modular(l);
      auto law = [](const fca::LawCheck& c) {
        json j = {{"holds", c.holds}};
        if (c.violating_triple) j["triple"] = *c.violating_triple;
        if (c.sublattice) j["sublattice"] = *c.sublattice;
        return j;
      };
      Output out(output);
      out() << json{{"size", l.size()},
                    {"bottom", l.bottom()},
                    {"top", l.top()},
                    {"axioms_ok", axioms.ok()},
                    {"pair_checks", axioms.pair_checks},
                    {"triple_checks", axioms.triple_checks},
                    {"violations", axioms.violations},
                    {"join_irreducible", irr.join_irreducible},
                    {"meet_irreducible", irr.meet_irreducible},
                    {"distributive", law(dist)},
                    {"modular", law(mod)}}
                   .dump(2)
            << "\n";
    } else if (concepts->parsed()) {
      const auto k = load_context(input);
      fca::CboOptions opt{fca::parse_strategy(strategy), stream ? fca::EmitOrder::kBacktrack : fca::EmitOrder::kDiscovery,
                          sort_items};
      Output out(output);
      if (format == "tsv") {
        fca::for_each_concept(k, opt, [&](const fca::Concept& c) {
          out() << joined(k.names(c.extent)) << "\t" << joined(k.names(c.intent)) << "\n";
          if (stream) out().flush();
        });
      } else if (stream) {
        fca::for_each_concept(k, opt, [&](const fca::Concept& c) {
          out() << fca::json_io::to_json(k, c).dump() << "\n";
          out().flush();
        });
      } else {
        json all = json::array();
        fca::for_each_concept(k, opt, [&](const fca::Concept& c) { all.push_back(fca::json_io::to_json(k, c)); });
        out() << all.dump(2) << "\n";
      }
    } else if (lattice->parsed()) {
      const auto k = load_context(input);
      const auto l = fca::build_lattice(k, fca::CboOptions{fca::parse_strategy(strategy)});
      Output out(dot_path.empty() ? output : dot_path);
      out() << fca::to_dot(k, l, fca::parse_labeling(labels));
    } else if (basis->parsed()) {
      const auto k = load_context(input);
      Output out(output);
      out() << fca::io::write_implications(fca::duquenne_guigues(k, fca::parse_basis_variant(variant)), k.attributes());
    } else if (direct->parsed()) {
      const auto k = load_context(input);
      Output out(output);
      out() << fca::io::write_implications(fca::proper_premises(k), k.attributes());
    } else if (close->parsed()) {
      const auto k = load_context(input);
      const auto x = k.attribute_set(split_names(set_arg));
      fca::AttributeSet closed = x;
      if (basis_path.empty()) {
        closed = k.close(x);
      } else {
        auto in = open(basis_path);
        closed = fca::lin_closure(x, fca::io::read_implications(in, k.attributes()));
      }
      Output out(output);
      out() << joined(k.names(closed)) << "\n";
    } else if (clarify->parsed()) {
      const auto r = fca::clarify(load_context(input));
      Output out(output);
      out() << fca::io::write_burmeister(r.context);
      std::cerr << "kept " << r.context.num_objects() << " objects, " << r.context.num_attributes() << " attributes\n";
    } else if (reduce->parsed()) {
      const auto k = load_context(input);
      const auto ra = fca::reduce_attributes(k);
      const auto ro = fca::reduce_objects(ra.context);
      Output out(output);
      out() << fca::io::write_burmeister(ro.context);
      for (auto m : ra.removed) std::cerr << "removed attribute " << k.attributes()[m] << "\n";
      for (auto g : ro.removed) std::cerr << "removed object " << ra.context.objects()[g] << "\n";
    } else if (scale->parsed()) {
      const auto mv = load_many_valued(input);
      Output out(output);
      out() << fca::io::write_burmeister(fca::scale(mv.context, fca::parse_scale_method(method), mv.orders));
    } else if (kn->parsed()) {
      const auto mv = load_many_valued(input);
      Output out(output);
      out() << fca::io::write_burmeister(fca::build_kn(mv.context));
    } else if (kw->parsed()) {
      const auto k = load_context(input);
      Output out(output);
      out() << fca::io::write_many_valued_csv(fca::build_kw(k));
    } else if (bench->parsed()) {
      const auto k = load_context(input);
      const auto s = fca::parse_strategy(strategy);
      fca::DelayStats stats;
      double best = 1e300;
      for (int i = 0; i < repeat; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        stats = fca::measure_delay(k, s);
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      }
      Output out(output);
      out() << json{{"concepts", stats.concept_count},
                    {"max_delay", stats.max_delay},
                    {"total_steps", stats.total_steps},
                    {"delays", stats.delays},
                    {"seconds", best},
                    {"repeat", repeat}}
                   .dump(2)
            << "\n";
    } else if (explore_cmd->parsed()) {
      const auto k = load_context(input);
      Output out(output);
      explore(k, std::cin, out());
    } else if (serve->parsed()) {
      std::optional<std::filesystem::path> data;
      if (!data_dir.empty()) data = data_dir;
      fca::ExplorationService service(data, std::filesystem::path(static_dir));
      if (!service.bind(host, port)) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return 1;
      }
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::thread watcher([&] {
        while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
        service.stop();
      });
      std::cerr << "listening on http://" << host << ":" << port << "\n";
      service.listen_after_bind();
      g_interrupted = true;
      watcher.join();
    }
  } catch (const MissingFile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fca::Error& e) {
    std::cerr << "error: " << fca::to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
