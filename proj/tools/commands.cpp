#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dot.hpp"
#include "dsl.hpp"
#include "json.hpp"
#include "toptree/embed.hpp"
#include "toptree/errors.hpp"
#include "toptree/family.hpp"

namespace toptree::cli {

using nlohmann::json;

namespace {

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) throw ArgumentError(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(n);
}

struct Outcome {
  std::string verdict;
  std::vector<std::string> lines;  // text output; the verdict alone when empty
  json certificate;
  int code = 0;
};

int code_of(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return 0;
    case Verdict::fails:
      return kExitFalse;
    case Verdict::unknown:
      break;
  }
  return kExitUnknown;
}

Outcome of_verdict(Verdict v) { return {to_string(v), {}, nullptr, code_of(v)}; }

Outcome of_bool(bool b) { return of_verdict(b ? Verdict::holds : Verdict::fails); }

json witness_json(const EmbeddingWitness& w) { return {{"image", w.image}, {"edge_paths", w.edge_paths}}; }

json seq_certificate(const LeqStarResult& r) {
  json c = {{"greedy_indices", r.greedy.indices}};
  if (r.undominated_cycle_entry) c["undominated_cycle_entry"] = to_string(*r.undominated_cycle_entry);
  return c;
}

std::optional<FiniteTree> as_finite(const SpinedTree& t) {
  if (t.is<Fin>()) return t.as<Fin>().tree;
  return std::nullopt;
}

Outcome minor(const std::string& a, const std::string& b, const std::string& root) {
  const auto va = dsl::evaluate(dsl::parse(a));
  const auto vb = dsl::evaluate(dsl::parse(b));
  if (std::holds_alternative<EPSeq>(va) != std::holds_alternative<EPSeq>(vb)) {
    throw ArgumentError("minor compares two trees or two sequences");
  }
  if (const auto* f = std::get_if<EPSeq>(&va)) {
    auto r = leq_star_certified(*f, std::get<EPSeq>(vb));
    Outcome o = of_bool(r.holds);
    o.certificate = seq_certificate(r);
    return o;
  }
  const auto& ta = std::get<SpinedTree>(va);
  const auto& tb = std::get<SpinedTree>(vb);
  const auto fa = as_finite(ta), fb = as_finite(tb);
  if (fa && fb) {
    const RootMode mode = root == "strict" ? RootMode::strict : RootMode::relaxed;
    auto w = rooted_minor_witness(*fa, *fb, mode);
    Outcome o = of_bool(w.has_value());
    if (w) o.certificate = witness_json(*w);
    return o;
  }
  if (root == "strict") throw ArgumentError("strict root mode applies to finite trees only");
  return of_verdict(spined_minor(ta, tb));
}

Outcome equiv(const std::string& a, const std::string& b) {
  const auto va = dsl::evaluate(dsl::parse(a));
  const auto vb = dsl::evaluate(dsl::parse(b));
  if (std::holds_alternative<EPSeq>(va) != std::holds_alternative<EPSeq>(vb)) {
    throw ArgumentError("equiv compares two trees or two sequences");
  }
  if (const auto* f = std::get_if<EPSeq>(&va)) {
    const auto& g = std::get<EPSeq>(vb);
    auto fw = leq_star_certified(*f, g), bw = leq_star_certified(g, *f);
    Outcome o = of_bool(fw.holds && bw.holds);
    o.certificate = {{"forward", seq_certificate(fw)}, {"backward", seq_certificate(bw)}};
    return o;
  }
  const auto& ta = std::get<SpinedTree>(va);
  const auto& tb = std::get<SpinedTree>(vb);
  const Verdict fw = spined_minor(ta, tb), bw = spined_minor(tb, ta);
  Verdict v = Verdict::unknown;
  if (fw == Verdict::fails || bw == Verdict::fails) {
    v = Verdict::fails;
  } else if (fw == Verdict::holds && bw == Verdict::holds) {
    v = Verdict::holds;
  }
  Outcome o = of_verdict(v);
  o.certificate = {{"forward", to_string(fw)}, {"backward", to_string(bw)}};
  return o;
}

Outcome order_of(const std::string& t) {
  return {to_string(order(dsl::evaluate_tree(dsl::parse(t)))), {}, nullptr, 0};
}

Outcome classify_of(const std::string& t) {
  const SpinedTree tree = dsl::evaluate_tree(dsl::parse(t));
  const Classification c = classify(tree);
  Outcome o{"order " + to_string(c.order) + ", " + std::to_string(c.ray_count) + " maximal ray" +
                (c.ray_count == 1 ? "" : "s"),
            {}, nullptr, 0};
  json rays = json::array();
  for (const auto& r : maximal_rays(tree)) rays.push_back({{"path", r.path}, {"order", to_string(r.order)}});
  o.certificate = {{"order", to_string(c.order)}, {"ray_count", c.ray_count}, {"rays", rays}};
  return o;
}

Outcome enumerate(std::size_t nodes, const Limits& limits) {
  const auto trees = enumerate_rooted_trees(nodes, limits.max_nodes);
  Outcome o{std::to_string(trees.size()) + " trees", {}, json::object(), 0};
  json list = json::array();
  for (const auto& t : trees) {
    o.lines.push_back(to_string(t));
    list.push_back(to_string(t));
  }
  o.certificate["trees"] = list;
  return o;
}

Outcome classes(std::size_t max_nodes, const Limits& limits) {
  std::vector<FiniteTree> trees;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    auto level = enumerate_rooted_trees(n, limits.max_nodes);
    trees.insert(trees.end(), level.begin(), level.end());
  }
  const std::size_t n = trees.size();
  std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) below[i][j] = i != j && rooted_minor(trees[i], trees[j]);
  }
  // equivalence is isomorphism on finite trees, so classes are singletons
  json edges = json::array();
  Outcome o{std::to_string(n) + " classes", {}, json::object(), 0};
  for (std::size_t i = 0; i < n; ++i) o.lines.push_back(std::to_string(i) + " " + to_string(trees[i]));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!below[i][j]) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k) covered = !(below[i][k] && below[k][j]);
      if (!covered) continue;
      edges.push_back({i, j});
      o.lines.push_back(std::to_string(i) + " -> " + std::to_string(j));
    }
  }
  json list = json::array();
  for (const auto& t : trees) list.push_back(json::array({to_string(t)}));
  o.certificate = {{"classes", list}, {"hasse", edges}};
  return o;
}

Outcome tstar(const std::string& alpha, const std::string& t) {
  std::optional<std::uint32_t> a;
  if (alpha != "w") {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(alpha, &used);
      if (used != alpha.size()) throw std::invalid_argument(alpha);
      a = static_cast<std::uint32_t>(v);
    } catch (const std::logic_error&) {
      throw ArgumentError("--alpha takes a number or w");
    }
  }
  const auto r = t_star(dsl::evaluate_tree(dsl::parse(t)), a);
  if (!r) return {"none", {}, nullptr, 0};
  return {dsl::print(*r), {}, {{"order", to_string(order(*r))}}, 0};
}

Outcome family(std::size_t size, const std::string& base) {
  const auto fam = family_generate(dsl::evaluate_tree(dsl::parse(base)), size);
  Outcome o{std::to_string(fam.size()) + " presentations", {}, json::object(), 0};
  json members = json::array();
  for (const auto& t : fam) {
    o.lines.push_back(dsl::print(t));
    members.push_back(dsl::print(t));
  }
  json pairs = json::array();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      const IsoResult r = presentation_iso(fam[i], fam[j]);
      json p = {{"i", i},
                {"j", j},
                {"minor_forward", to_string(spined_minor(fam[i], fam[j]))},
                {"minor_backward", to_string(spined_minor(fam[j], fam[i]))},
                {"iso", to_string(r.verdict)}};
      if (r.certificate) {
        p["certificate"] = {{"side", r.certificate->first_side ? "i" : "j"},
                            {"index", r.certificate->index},
                            {"value", r.certificate->value}};
      }
      pairs.push_back(p);
    }
  }
  o.certificate = {{"members", members}, {"pairs", pairs}};
  return o;
}

Outcome truncate_of(std::size_t spine, std::size_t depth, const std::string& t, const Limits& limits) {
  const FiniteTree piece = truncate(dsl::evaluate_tree(dsl::parse(t)), spine, depth, limits.truncate_cap);
  return {to_string(piece), {}, {{"nodes", piece.size()}}, 0};
}

Outcome dot_of(std::size_t spine, std::size_t depth, const std::string& t, const Limits& limits) {
  const SpinedTree tree = dsl::evaluate_tree(dsl::parse(t));
  const FiniteTree piece =
      tree.is<Fin>() ? tree.as<Fin>().tree : truncate(tree, spine, depth, limits.truncate_cap);
  const std::string dot = emit_dot(piece);
  Outcome o{dot, {}, nullptr, 0};
  o.lines.push_back(dot.substr(0, dot.size() - 1));
  return o;
}

}  // namespace

Limits limits_from_env() {
  return {env_size("TOPTREE_MAX_NODES", kDefaultEnumerationBound),
          env_size("TOPTREE_TRUNCATE_CAP", kDefaultTruncateCap)};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Selftest& selftest) {
  CLI::App app{"Topological minors of rooted trees and their finite presentations", "toptree"};
  app.require_subcommand(1);
  std::string format = "text", out_file;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_file, "Also write the JSON result to this file");

  std::vector<std::string> inputs;
  std::function<Outcome()> action;
  std::string a, b, root = "relaxed", alpha;
  std::size_t nodes = 0, spine = 0, depth = 0, dot_spine = 3, dot_depth = 3;
  Limits limits{};

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  CLI::App* c_minor = sub("minor", "Is A a topological minor of B (trees or sequences)");
  c_minor->add_option("A", a)->required();
  c_minor->add_option("B", b)->required();
  c_minor->add_option("--root", root, "Root mode for finite trees")->check(CLI::IsMember({"relaxed", "strict"}));
  c_minor->callback([&] {
    inputs = {a, b};
    action = [&] { return minor(a, b, root); };
  });

  CLI::App* c_equiv = sub("equiv", "Are A and B minors of each other");
  c_equiv->add_option("A", a)->required();
  c_equiv->add_option("B", b)->required();
  c_equiv->callback([&] {
    inputs = {a, b};
    action = [&] { return equiv(a, b); };
  });

  CLI::App* c_order = sub("order", "Order of a tree");
  c_order->add_option("T", a)->required();
  c_order->callback([&] {
    inputs = {a};
    action = [&] { return order_of(a); };
  });

  CLI::App* c_classify = sub("classify", "Order and number of maximal rays");
  c_classify->add_option("T", a)->required();
  c_classify->callback([&] {
    inputs = {a};
    action = [&] { return classify_of(a); };
  });

  CLI::App* c_enum = sub("enumerate", "All rooted trees with n nodes");
  c_enum->add_option("--nodes", nodes)->required()->check(CLI::PositiveNumber);
  c_enum->callback([&] {
    inputs = {std::to_string(nodes)};
    action = [&] { return enumerate(nodes, limits); };
  });

  CLI::App* c_classes = sub("classes", "Hasse diagram of the minor order on small trees");
  c_classes->add_option("--max-nodes", nodes)->required()->check(CLI::PositiveNumber);
  c_classes->callback([&] {
    inputs = {std::to_string(nodes)};
    action = [&] { return classes(nodes, limits); };
  });

  CLI::App* c_tstar = sub("tstar", "Part of T spanned by comb-carrying rays");
  c_tstar->add_option("--alpha", alpha, "A number >= 3 or w")->required();
  c_tstar->add_option("T", a)->required();
  c_tstar->callback([&] {
    inputs = {alpha, a};
    action = [&] { return tstar(alpha, a); };
  });

  CLI::App* c_family = sub("family", "Equivalent, pairwise non-isomorphic subdivisions of BASE");
  c_family->add_option("--size", nodes)->required()->check(CLI::PositiveNumber);
  c_family->add_option("BASE", a)->required();
  c_family->callback([&] {
    inputs = {std::to_string(nodes), a};
    action = [&] { return family(nodes, a); };
  });

  CLI::App* c_trunc = sub("truncate", "Finite piece of a presentation");
  c_trunc->add_option("--spine", spine)->required()->check(CLI::PositiveNumber);
  c_trunc->add_option("--depth", depth)->required()->check(CLI::PositiveNumber);
  c_trunc->add_option("T", a)->required();
  c_trunc->callback([&] {
    inputs = {std::to_string(spine), std::to_string(depth), a};
    action = [&] { return truncate_of(spine, depth, a, limits); };
  });

  CLI::App* c_dot = sub("dot", "Graphviz rendering (infinite trees are truncated)");
  c_dot->add_option("--spine", dot_spine, "Spine steps when truncating")->check(CLI::PositiveNumber);
  c_dot->add_option("--depth", dot_depth, "Nesting depth when truncating")->check(CLI::PositiveNumber);
  c_dot->add_option("T", a)->required();
  c_dot->callback([&] {
    inputs = {a};
    action = [&] { return dot_of(dot_spine, dot_depth, a, limits); };
  });

  CLI::App* c_self = sub("selftest", "Run the acceptance criteria");
  c_self->callback([&] {
    action = [&] {
      if (!selftest) throw ArgumentError("selftest is not available in this build");
      std::ostringstream report;
      const int failures = selftest(report);
      Outcome o{failures == 0 ? "pass" : "fail", {}, {{"failures", failures}}, failures == 0 ? 0 : kExitFalse};
      std::string line;
      std::istringstream lines(report.str());
      json items = json::array();
      while (std::getline(lines, line)) {
        o.lines.push_back(line);
        items.push_back(line);
      }
      o.lines.push_back(failures == 0 ? "selftest: pass" : "selftest: " + std::to_string(failures) + " failed");
      o.certificate["criteria"] = items;
      return o;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  json result = {{"command", app.get_subcommands().front()->get_name()}, {"inputs", inputs}};
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string error;
  try {
    limits = limits_from_env();
    o = action();
  } catch (const ParseError& e) {
    o.code = kExitParse;
    error = std::string("parse error at ") + e.what();
  } catch (const ResourceError& e) {
    o.code = kExitResource;
    error = std::string("resource bound: ") + e.what();
  } catch (const UnsupportedError& e) {
    o.code = kExitUnknown;
    o.verdict = "unknown";
    error = std::string("unsupported: ") + e.what();
  } catch (const ArgumentError& e) {
    o.code = kExitUsage;
    error = std::string("invalid argument: ") + e.what();
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  result["verdict"] = error.empty() ? o.verdict : (o.verdict.empty() ? "error" : o.verdict);
  if (!error.empty()) result["error"] = error;
  if (!o.certificate.is_null()) result["certificate"] = o.certificate;
  result["elapsed_ms"] = elapsed.count();

  if (format == "json") {
    out << result.dump(2) << "\n";
  } else if (!error.empty()) {
    err << error << "\n";
    if (o.verdict == "unknown") out << "unknown\n";
  } else if (o.lines.empty()) {
    out << o.verdict << "\n";
  } else {
    for (const auto& line : o.lines) out << line << "\n";
  }
  if (!out_file.empty()) {
    std::ofstream file(out_file);
    if (!file) {
      err << "cannot write " << out_file << "\n";
      return kExitUsage;
    }
    file << result.dump(2) << "\n";
  }
  return o.code;
}

}  // namespace toptree::cli
