// gog-star: command-line front end for the star graph library.
//
// Exit codes: 0 success, 1 validation or verdict failure, 2 I/O or parse
// error, 3 internal invariant breach (including a certificate that would
// contradict the cut-vertex dichotomy).

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>

#include "gogstar/gogstar.hpp"

using namespace gogstar;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, Invalid = 1, Malformed = 2, Breach = 3 };

struct IoError : Error {
  using Error::Error;
};

bool colour_enabled() {
  const char* env = std::getenv("GOGSTAR_COLOR");
  if (env && (std::string(env) == "0" || std::string(env) == "never" || std::string(env) == "off")) return false;
  return isatty(STDOUT_FILENO) != 0;
}

std::string paint(const std::string& text, const char* code) {
  static const bool on = colour_enabled();
  return on ? std::string("\x1b[") + code + "m" + text + "\x1b[0m" : text;
}

Document load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_document(in);
}

/// The named morphism, validated as a Stallings morphism.
BassMorphism load_morphism(const std::string& path, const std::string& name) {
  Document doc = load(path);
  BassMorphism m = doc.map(name);
  Report r = validate_morphism(m);
  if (!r.ok()) throw InputError("morphism '" + name + "' (line " + std::to_string(doc.map_lines.at(name)) + ") does not validate: " + r.first());
  return m;
}

std::vector<std::string> labels(const StarGraph& sg, const std::vector<Direction>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(direction_label(sg, d));
  return out;
}

Json star_json(const StarGraph& sg, const StarVerdict& v) {
  Json j;
  j["directions"] = sg.directions.size();
  j["pieces"] = sg.pieces.size();
  j["edges"] = sg.edges.size();
  Json comps = Json::object();
  for (std::size_t w = 0; w < sg.target->vertices.size(); ++w) comps[sg.target->vertices[w].name] = v.components[w];
  j["components"] = comps;
  j["cut_vertices"] = labels(sg, cut_vertices(sg));
  j["verdict"] = to_string(v.kind);
  if (v.kind == StarVerdict::Kind::Disconnected) j["disconnected_at"] = sg.target->vertices[v.disconnected_at].name;
  return j;
}

void print_star_text(const StarGraph& sg, const StarVerdict& v) {
  std::cout << "directions=" << sg.directions.size() << " pieces=" << sg.pieces.size() << " edges=" << sg.edges.size()
            << "\n";
  for (std::size_t w = 0; w < sg.target->vertices.size(); ++w)
    std::cout << "Gamma_" << sg.target->vertices[w].name << ": components=" << v.components[w] << "\n";
  std::cout << "cut vertices:";
  for (const auto& l : labels(sg, cut_vertices(sg))) std::cout << " " << l;
  std::cout << "\nverdict: " << paint(to_string(v.kind), v.kind == StarVerdict::Kind::Neither ? "33" : "32") << "\n";
}

void emit_star(const StarGraph& sg, const StarVerdict& v, const std::string& format) {
  if (format == "dot")
    std::cout << export_dot(sg);
  else if (format == "text")
    print_star_text(sg, v);
  else
    std::cout << star_json(sg, v).dump(2) << "\n";
}

std::string move_text(const BassMorphism& m, const FoldMove& move) {
  DirectionTable table(m.source);
  std::string out = to_string(move.kind) + " at " + m.source->vertices[move.vertex].name + " folding " +
                    table.label(move.first) + " with " + table.label(move.second);
  if (move.kind == FoldMove::Kind::TypeII) out += " element " + std::to_string(move.element);
  return out;
}

int cmd_validate(const std::string& path) {
  Document doc = load(path);
  Report all;
  for (const auto& name : doc.graph_order) all.merge(validate_gog(*doc.graphs.at(name)), "graph " + name + ": ");
  for (const auto& name : doc.map_order)
    all.merge(validate_morphism(doc.maps.at(name)), "map " + name + " (line " + std::to_string(doc.map_lines.at(name)) + "): ");
  if (all.ok()) {
    std::cout << paint("ok", "32") << ": " << doc.graph_order.size() << " graphs, " << doc.map_order.size()
              << " morphisms\n";
    return Ok;
  }
  for (const auto& issue : all.issues) std::cout << paint("violation", "31") << ": " << issue << "\n";
  return Invalid;
}

int cmd_stargraph(const std::string& path, const std::string& map, const std::string& format) {
  BassMorphism m = load_morphism(path, map);
  StarGraph sg = build_star_graph(m);
  emit_star(sg, verdict(sg), format);
  return Ok;
}

int cmd_fold(const std::string& path, const std::string& map, bool until_immersion) {
  BassMorphism m = load_morphism(path, map);
  std::vector<FoldResult> stages;
  if (until_immersion) {
    stages = fold_to_immersion(m);
  } else if (auto move = find_foldable_pair(m)) {
    stages.push_back(apply_fold(m, *move));
  }
  const BassMorphism* current = &m;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    std::cout << "# stage " << i + 1 << ": " << move_text(*current, stages[i].move) << "\n";
    std::cout << write_morphism(stages[i].residual) << "\n";
    current = &stages[i].residual;
  }
  if (stages.empty()) std::cout << "# already an immersion\n" << write_morphism(m) << "\n";
  std::cout << "# stage  type    vertex  oriented-edges  immersion\n";
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& r = stages[i].residual;
    std::cout << "# " << std::left << std::setw(6) << i + 1 << " " << std::setw(7) << to_string(stages[i].move.kind) << " "
              << std::setw(7) << (i == 0 ? m : stages[i - 1].residual).source->vertices[stages[i].move.vertex].name << " "
              << std::setw(15) << r.source->edges.size() << " " << (is_immersion(r) ? "yes" : "no") << "\n";
  }
  std::cout << "folds=" << stages.size() << " type-sequence=[";
  for (std::size_t i = 0; i < stages.size(); ++i) std::cout << (i ? ", " : "") << to_string(stages[i].move.kind);
  std::cout << "]\n";
  return Ok;
}

int cmd_certificate(const std::string& path, const std::string& format) {
  Document doc = load(path);
  CertificateReport rep = check_simplicity_certificate(certificate_from(doc));
  if (format == "json") {
    Json j;
    Json checks = Json::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    j["checks"] = checks;
    j["accepted"] = rep.accepted();
    j["folds"] = rep.folds;
    if (rep.verdict) j["verdict"] = to_string(rep.verdict->kind);
    if (rep.verdict && rep.star) j["cut_vertices"] = labels(*rep.star, rep.verdict->cut);
    j["theorem_violation"] = rep.theorem_violation;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& c : rep.checks) {
      const char* code = c.status == CheckStatus::Pass ? "32" : c.status == CheckStatus::Fail ? "31" : "33";
      std::cout << paint(to_string(c.status), code) << "  " << c.name;
      if (!c.detail.empty()) std::cout << ": " << c.detail;
      std::cout << "\n";
    }
    if (rep.verdict) {
      std::cout << "verdict: " << to_string(rep.verdict->kind);
      for (const auto& l : labels(*rep.star, rep.verdict->cut)) std::cout << " " << l;
      std::cout << "\n";
    }
    std::cout << (rep.accepted() ? "certificate accepted\n" : "certificate rejected\n");
  }
  if (rep.theorem_violation) {
    std::cerr << "error: accepted certificate with a connected star graph and no cut vertex\n";
    return Breach;
  }
  return rep.accepted() ? Ok : Invalid;
}

int cmd_directions(const std::string& path, const std::string& map) {
  BassMorphism m = load_morphism(path, map);
  InducedMap induced(m);
  for (std::size_t v = 0; v < m.source->vertices.size(); ++v) {
    std::cout << m.source->vertices[v].name << " -> " << m.target->vertices[m.vertex_map[v]].name << ":\n";
    for (const auto& d : induced.source().at(v))
      std::cout << "  " << induced.source().label(d) << " -> " << induced.target().label(induced(d)) << "\n";
  }
  return Ok;
}

int cmd_turns(const std::string& path, const std::string& map) {
  BassMorphism m = load_morphism(path, map);
  InducedMap induced(m);
  for (std::size_t v = 0; v < m.source->vertices.size(); ++v) {
    std::cout << m.source->vertices[v].name << " -> " << m.target->vertices[m.vertex_map[v]].name << ":";
    for (const auto& t : taken_turns(induced, v))
      std::cout << " {" << induced.target().label(t.first) << ", " << induced.target().label(t.second) << "}";
    std::cout << "\n";
  }
  return Ok;
}

int cmd_whitehead(std::size_t rank, const std::vector<std::string>& raw, const std::string& format) {
  std::vector<CyclicWord> words;
  std::size_t needed = 0;
  for (const auto& w : raw) needed = std::max(needed, inferred_rank(parse_letters(w)));
  if (rank == 0) rank = needed;
  for (const auto& w : raw) words.push_back(cyclic_reduce(w, rank));
  WhiteheadReport rep = whitehead_report(words, rank);
  if (format == "json") {
    Json j;
    j["rank"] = rank;
    std::vector<std::string> texts;
    for (const auto& w : words) texts.push_back(w.text());
    j["words"] = texts;
    Json star = star_json(rep.graph, rep.verdict);
    for (auto it = star.begin(); it != star.end(); ++it) j[it.key()] = it.value();
    std::cout << j.dump(2) << "\n";
  } else {
    emit_star(rep.graph, rep.verdict, format);
  }
  return Ok;
}

int cmd_unfold(const std::string& path, const std::string& graph, std::uint64_t seed, const std::string& kind) {
  Document doc = load(path);
  GraphPtr target = doc.graph(graph);
  Report r = validate_gog(*target);
  if (!r.ok()) throw InputError("graph '" + graph + "' does not validate: " + r.first());
  const auto k = kind == "II" || kind == "TypeII" ? FoldMove::Kind::TypeII : FoldMove::Kind::TypeI;
  std::cout << write_morphism(unfold_random(target, seed, k));
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gog-star: star graphs, folds and cut vertices of Stallings graphs of groups.\n"
               "Set GOGSTAR_COLOR=0 to disable ANSI colour."};
  app.require_subcommand(1);
  std::string path, map = "f", format = "text", graph = "target", kind = "I";
  bool until = false;
  std::uint64_t seed = 0;
  std::size_t rank = 0;
  std::vector<std::string> words;
  int code = Ok;

  auto* validate = app.add_subcommand("validate", "Validate every graph and morphism in a file");
  validate->add_option("file", path, "Input in the gog text format")->required();

  auto* star = app.add_subcommand("stargraph", "Star graph counts, components, cut vertices and verdict");
  star->add_option("file", path)->required();
  star->add_option("--map", map, "Morphism name (default f)");
  star->add_option("--format", format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));

  auto* fold = app.add_subcommand("fold", "Fold a morphism; one fold unless --until-immersion");
  fold->add_option("file", path)->required();
  fold->add_option("--map", map, "Morphism name (default f)");
  fold->add_flag("--until-immersion", until, "Fold until the map is an immersion");

  auto* cert = app.add_subcommand("certificate", "Check a simplicity certificate");
  cert->add_option("file", path)->required();
  cert->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* dirs = app.add_subcommand("directions", "List source directions and their images");
  dirs->add_option("file", path)->required();
  dirs->add_option("--map", map, "Morphism name (default f)");

  auto* turns = app.add_subcommand("turns", "List the turns taken at each source vertex");
  turns->add_option("file", path)->required();
  turns->add_option("--map", map, "Morphism name (default f)");

  auto* white = app.add_subcommand("whitehead", "Star graph of cyclic words over the rose (capital = inverse)");
  white->add_option("--rank", rank, "Free rank (default: largest letter used)");
  white->add_option("--format", format, "json, dot or text (default json)")->check(CLI::IsMember({"json", "dot", "text"}));
  white->add_option("words", words, "Words such as abAB or ab^-1")->required();

  auto* unfold = app.add_subcommand("unfold", "Random almost-G morphism into a target graph of groups");
  unfold->add_option("file", path)->required();
  unfold->add_option("--graph", graph, "Target graph section (default target)");
  unfold->add_option("--seed", seed, "Random seed (default 0)");
  unfold->add_option("--kind", kind, "Fold type to undo: I or II")->check(CLI::IsMember({"I", "II", "TypeI", "TypeII"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Ok : Malformed;
  }

  try {
    if (*validate) code = cmd_validate(path);
    else if (*star) code = cmd_stargraph(path, map, format);
    else if (*fold) code = cmd_fold(path, map, until);
    else if (*cert) code = cmd_certificate(path, format);
    else if (*dirs) code = cmd_directions(path, map);
    else if (*turns) code = cmd_turns(path, map);
    else if (*white) code = cmd_whitehead(rank, words, white->count("--format") ? format : "json");
    else if (*unfold) code = cmd_unfold(path, graph, seed, kind);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Malformed;
  } catch (const ParseError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return Malformed;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Breach;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Invalid;
  }
  return code;
}
