// posh: command-line front end for the posheaf library.
//
// Exit codes: 0 the property holds, 1 it fails (witness in the report),
// 2 malformed input, 3 a budget was exceeded.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "posh/posh.hpp"

namespace fs = std::filesystem;
using posh::CheckReport;
using posh::Json;

namespace {

enum Exit { kPass = 0, kFail = 1, kMalformed = 2, kBudget = 3 };

struct Outcome {
  Json report;
  bool passed = true;
  std::optional<Json> object;  // constructed object, written with -o
};

Outcome from_report(const CheckReport& r) { return {r.to_json(), r.passed, std::nullopt}; }

struct Input {
  Json doc;
  fs::path base;
};

Input read_input(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    try {
      return {Json::parse(ss.str()), fs::current_path()};
    } catch (const Json::parse_error& e) {
      throw posh::Error(posh::ErrorKind::MalformedInput, std::string("invalid JSON on stdin: ") + e.what());
    }
  }
  return {posh::io::load_json(path), posh::io::base_of(fs::absolute(path))};
}

/// Runs checks in order and reports the first failure, listing every stage.
Outcome staged(const std::vector<std::pair<std::string, std::function<CheckReport()>>>& stages) {
  Json done = Json::array();
  CheckReport last;
  for (const auto& [name, run] : stages) {
    last = run();
    done.push_back({{"stage", name}, {"verdict", last.passed ? "pass" : "fail"}});
    if (!last.passed) break;
  }
  Json j = last.to_json();
  j["stages"] = done;
  return {j, last.passed, std::nullopt};
}

posh::PresheafPtr load_presheaf(const Input& in) { return posh::io::presheaf_from_json(in.doc, in.base); }

posh::PoSheaf load_posheaf(const Input& in) { return posh::io::posheaf_from_json(in.doc, in.base); }

std::vector<std::pair<std::string, std::function<CheckReport()>>> sheaf_stages(const posh::Presheaf& p) {
  return {{"presheaf", [&] { return posh::verify_presheaf(p); }},
          {"sheaf", [&] { return posh::verify_sheaf(p).to_report(p); }}};
}

std::vector<std::pair<std::string, std::function<CheckReport()>>> posheaf_stages(const posh::PoSheaf& p) {
  auto s = sheaf_stages(p.F());
  s.emplace_back("posheaf", [&] { return posh::verify_posheaf(p); });
  return s;
}

/// A verify document names its posheaves (inline or by path) and maps.
struct Pair {
  posh::PoSheaf source, target;
};

Pair load_pair(const Input& in) {
  const auto& d = in.doc;
  if (!d.contains("source") || !d.contains("target"))
    throw posh::Error(posh::ErrorKind::MalformedInput, "document needs 'source' and 'target'");
  auto src = posh::io::resolve(d.at("source"), in.base);
  auto tgt = posh::io::resolve(d.at("target"), in.base);
  auto f = posh::io::posheaf_from_json(src, in.base);
  auto g = posh::io::posheaf_from_json(tgt, in.base, tgt.contains("frame") ? nullptr : f.sheaf->frame);
  return {f, g};
}

posh::SheafMorphism load_map(const Input& in, const char* key, const posh::PresheafPtr& s, const posh::PresheafPtr& t) {
  if (!in.doc.contains(key)) throw posh::Error(posh::ErrorKind::MalformedInput, std::string("document has no '") + key + "'");
  return posh::io::morphism_from_json(in.doc.at(key), s, t);
}

bool is_locale_doc(const Json& d) { return d.is_object() && d.contains("fstar"); }
bool is_hom_doc(const Json& d) { return d.is_object() && d.contains("map") && d.contains("source"); }

Outcome posl_like(const Input& in, const posh::Budget& budget, bool complete) {
  if (is_locale_doc(in.doc)) {
    const auto f = posh::io::locale_from_json(in.doc, in.base);
    const auto g = posh::gamma(f, budget);
    if (!in.doc.contains("orders")) throw posh::Error(posh::ErrorKind::OrderNotProvided, "locale document has no 'orders'");
    const auto orders = posh::io::order_from_json(in.doc.at("orders"), *g.sheaf);
    return from_report(complete ? posh::check_cposl(g, orders, budget) : posh::check_posl(g, orders));
  }
  const auto p = load_posheaf(in);
  const auto L = posh::lambda(p.sheaf, budget);
  const auto g = posh::gamma(L.locale, budget);
  const auto orders = posh::transport_orders(posh::unit(L, g), p.order);
  return from_report(complete ? posh::check_cposl(g, orders, budget) : posh::check_posl(g, orders));
}

Outcome run_check(const std::string& kind, const Input& in, const posh::Budget& budget) {
  if (kind == "frame") {
    auto d = posh::io::frame_doc(in.doc);
    return from_report(posh::verify_frame(d.names, d.leq));
  }
  if (kind == "lh") return from_report(posh::is_local_homeomorphism(posh::io::locale_from_json(in.doc, in.base)));
  if (kind == "spatial") return from_report(posh::is_spatial(posh::io::locale_from_json(in.doc, in.base), budget));
  if (kind == "posl") return posl_like(in, budget, false);
  if (kind == "cposl") return posl_like(in, budget, true);
  if (kind == "morphism") {
    if (!in.doc.contains("source") || !in.doc.contains("target"))
      throw posh::Error(posh::ErrorKind::MalformedInput, "document needs 'source' and 'target'");
    auto s = posh::io::presheaf_from_json(posh::io::resolve(in.doc.at("source"), in.base), in.base);
    auto tj = posh::io::resolve(in.doc.at("target"), in.base);
    auto t = posh::io::presheaf_from_json(tj, in.base, tj.contains("frame") ? nullptr : s->frame);
    return from_report(posh::verify_morphism(load_map(in, "alpha", s, t)));
  }
  if (kind == "presheaf") {
    auto p = load_presheaf(in);
    return from_report(posh::verify_presheaf(*p));
  }
  if (kind == "sheaf") {
    auto p = load_presheaf(in);
    return staged(sheaf_stages(*p));
  }
  const auto p = load_posheaf(in);
  auto stages = posheaf_stages(p);
  if (kind == "complete" || kind == "frame-sheaf")
    stages.emplace_back("complete", [&] { return posh::is_complete(p, budget).to_report(); });
  if (kind == "frame-sheaf") stages.emplace_back("frame-sheaf", [&] { return posh::is_frame_sheaf(p, budget); });
  return staged(stages);
}

Outcome run_verify(const std::string& kind, const Input& in, const posh::Budget& budget) {
  if (kind == "frame-equivalence") {
    if (is_hom_doc(in.doc)) return from_report(posh::verify_frame_equivalence(posh::io::frame_hom_from_json(in.doc, in.base), budget));
    return from_report(posh::verify_frame_equivalence(load_posheaf(in), budget));
  }
  if (kind == "equivalence") {
    if (is_locale_doc(in.doc)) return from_report(posh::verify_sh_lh_equivalence(posh::io::locale_from_json(in.doc, in.base), budget));
    auto p = load_presheaf(in);
    return from_report(posh::verify_sh_lh_equivalence(p, budget));
  }
  const auto [f, g] = load_pair(in);
  const auto a = load_map(in, "alpha", f.sheaf, g.sheaf);
  if (kind == "galois") return from_report(posh::verify_galois(f, g, a, load_map(in, "beta", g.sheaf, f.sheaf)));
  if (kind == "sup-preserving") return from_report(posh::verify_sup_preserving(f, g, a, budget));
  return from_report(posh::verify_frame_morphism(f, g, a, budget));
}

Outcome run_gen(const posh::GenConfig& cfg, const std::string& what) {
  posh::Rng rng(cfg.seed);
  const auto x = posh::share(posh::gen_frame(rng, cfg.max_opens));
  Json report{{"seed", cfg.seed}, {"frame_size", x->size()}};
  if (what == "frame" && !cfg.mutation) return {report, true, posh::io::frame_to_json(*x)};
  if (what == "hom" && !cfg.mutation) return {report, true, posh::io::frame_hom_to_json(posh::gen_frame_hom(rng, x, cfg.max_opens))};
  const auto p = posh::gen_posheaf(rng, x, cfg.max_carrier);
  report["sections"] = p.F().total_sections();
  if (!cfg.mutation) return {report, true, posh::io::posheaf_to_json(p)};
  report["mutation"] = std::string(posh::to_string(*cfg.mutation));
  std::optional<Json> obj;
  switch (*cfg.mutation) {
    case posh::Mutation::BreakPos3:
      if (auto q = posh::break_pos3(rng, p)) obj = posh::io::posheaf_to_json(*q);
      break;
    case posh::Mutation::RemoveAmalgamation:
      if (auto q = posh::remove_amalgamation(rng, p.F())) obj = posh::io::presheaf_to_json(*q);
      break;
    case posh::Mutation::BreakNaturality:
      if (auto m = posh::break_naturality(rng, posh::identity_morphism(p.sheaf)))
        obj = Json{{"source", posh::io::presheaf_to_json(p.F())}, {"target", posh::io::presheaf_to_json(p.F(), false)},
                   {"alpha", posh::io::morphism_to_json(*m)}};
      break;
    case posh::Mutation::BreakDistributivity:
      if (auto raw = posh::break_distributivity(rng, *x)) {
        Json leq = Json::array();
        for (const auto& [a, b] : raw->leq) leq.push_back({a, b});
        obj = Json{{"elements", raw->names}, {"leq", leq}};
      }
      break;
    case posh::Mutation::BreakMeetSquare: {
      const auto c = posh::meet_square_case(posh::gen_frame_hom(rng, x, 3));
      obj = Json{{"source", posh::io::posheaf_to_json(c.source)}, {"target", posh::io::posheaf_to_json(c.target, false)},
                 {"alpha", posh::io::morphism_to_json(c.mutated)}};
      break;
    }
  }
  if (!obj) {
    report["applied"] = false;
    return {report, false, std::nullopt};
  }
  report["applied"] = true;
  return {report, true, obj};
}

void render_human(std::ostream& os, const Json& r, int depth = 0) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (r.contains("criteria")) {
    for (const auto& c : r.at("criteria"))
      os << (c.at("verdict") == "pass" ? "PASS " : "FAIL ") << c.at("id").get<int>() << ". " << c.at("name").get<std::string>()
         << "\n";
    os << "suite: " << r.at("verdict").get<std::string>() << "\n";
    return;
  }
  if (!r.contains("verdict")) {
    os << pad << r.dump(2) << "\n";
    return;
  }
  os << pad << r.value("check", "result") << ": " << r.at("verdict").get<std::string>();
  if (r.contains("violation")) os << " (" << r.at("violation").get<std::string>() << ")";
  os << "\n";
  if (r.contains("witness")) os << pad << "  witness: " << r.at("witness").dump() << "\n";
  if (r.contains("forms"))
    for (const auto& f : r.at("forms")) render_human(os, f, depth + 1);
}

int exit_for(const posh::Error& e) { return e.kind() == posh::ErrorKind::ResourceLimit ? kBudget : kMalformed; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posh: partially ordered sheaves over finite locales"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json", output;
  posh::Budget budget = posh::Budget::from_env();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("-o,--output", output, "Write the constructed object (or the report) here");
  app.add_option("--budget-subsheaves", budget.subsheaves, "Cap on enumerated subsheaves");
  app.add_option("--budget-lambda", budget.lambda_assignments, "Cap on Λ assignments");
  app.add_option("--budget-sections", budget.section_search, "Cap on the section search");
  app.add_option("--budget-iso", budget.iso_search, "Cap on isomorphism searches");

  std::string kind, input;
  auto* check = app.add_subcommand("check", "Check a property of an instance");
  check->add_option("kind", kind, "What to check")
      ->required()
      ->check(CLI::IsMember({"frame", "presheaf", "sheaf", "posheaf", "complete", "frame-sheaf", "posl", "cposl", "lh",
                             "spatial", "morphism"}));
  check->add_option("input", input, "Instance JSON ('-' for stdin)")->required();

  auto* verify = app.add_subcommand("verify", "Verify a property of a morphism or an equivalence");
  verify->add_option("kind", kind)
      ->required()
      ->check(CLI::IsMember({"galois", "sup-preserving", "frame-morphism", "frame-equivalence", "equivalence"}));
  verify->add_option("input", input)->required();

  std::string subset = "{}";
  auto* points = app.add_subcommand("points", "List the points of a presheaf");
  points->add_option("input", input)->required();
  auto* bounds = app.add_subcommand("bounds", "Upper and lower bounds of a subset of a posheaf");
  bounds->add_option("input", input)->required();
  bounds->add_option("--subset", subset, "JSON object open -> [sections]");

  bool locale_out = false;
  auto* lam = app.add_subcommand("lambda", "The sheaf-locale Λ(P) (its frame, or the locale over X)");
  lam->add_option("input", input)->required();
  lam->add_flag("--locale", locale_out, "Emit the locale over X instead of the frame");
  auto* gam = app.add_subcommand("gamma", "The sheaf of cross-sections Γ(f)");
  gam->add_option("input", input)->required();
  auto* ph = app.add_subcommand("phi", "The frame sheaf Φ(h) of a frame homomorphism");
  ph->add_option("input", input)->required();
  auto* ps = app.add_subcommand("psi", "The frame homomorphism Ψ(F) of a frame sheaf");
  ps->add_option("input", input)->required();

  posh::GenConfig cfg;
  std::string mutation, what = "posheaf";
  auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--max-opens", cfg.max_opens)->check(CLI::Range(1, 64));
  gen->add_option("--max-carrier", cfg.max_carrier)->check(CLI::Range(1, 8));
  gen->add_option("--kind", what)->check(CLI::IsMember({"frame", "hom", "posheaf"}));
  gen->add_option("--mutation", mutation)
      ->check(CLI::IsMember({"break-POS3", "break-naturality", "break-distributivity", "remove-amalgamation",
                             "break-meet-square"}));

  posh::suite::Options so;
  std::vector<std::size_t> only;
  auto* suite = app.add_subcommand("suite", "Run the acceptance battery");
  suite->add_option("--seed", so.seed);
  suite->add_option("--instances", so.instances)->check(CLI::Range(1, 100000));
  suite->add_flag("--timing", so.timing, "Include timings (breaks byte-identical output)");
  suite->add_option("--only", only, "Criterion ids to run")->check(CLI::Range(1, 12));

  CLI11_PARSE(app, argc, argv);

  Outcome out;
  try {
    if (*check) out = run_check(kind, read_input(input), budget);
    else if (*verify) out = run_verify(kind, read_input(input), budget);
    else if (*points) {
      const auto p = load_presheaf(read_input(input));
      Json a = Json::array();
      for (const auto& pt : posh::enumerate_points(*p)) a.push_back(posh::point_json(*p, pt));
      out = {{{"points", a}, {"count", a.size()}}, true, std::nullopt};
    } else if (*bounds) {
      const auto in = read_input(input);
      const auto p = load_posheaf(in);
      Json sj;
      try {
        sj = Json::parse(subset);
      } catch (const Json::parse_error& e) {
        throw posh::Error(posh::ErrorKind::MalformedInput, std::string("--subset is not JSON: ") + e.what());
      }
      posh::Subsheaf s = posh::empty_subset(p.F());
      for (const auto& [k, v] : sj.items()) {
        const auto u = p.X().find(k);
        if (!u) throw posh::Error(posh::ErrorKind::MalformedInput, "subset names unknown open '" + k + "'");
        for (const auto& x : v) s.in[*u][posh::io::detail::lookup(p.F().carriers[*u], x.get<std::string>(), k)] = 1;
      }
      out = {posh::bounds(p, s).to_json(p.F()), true, std::nullopt};
    } else if (*lam) {
      const auto L = posh::lambda(load_presheaf(read_input(input)), budget);
      auto r = posh::verify_lambda(L, budget);
      out = from_report(r);
      out.object = locale_out ? posh::io::locale_to_json(L.locale) : posh::io::frame_to_json(L.locale.Y());
    } else if (*gam) {
      const auto in = read_input(input);
      const auto g = posh::gamma(posh::io::locale_from_json(in.doc, in.base), budget);
      auto r = posh::verify_sheaf(*g.sheaf).to_report(*g.sheaf);
      out = from_report(r);
      out.object = posh::io::presheaf_to_json(*g.sheaf);
    } else if (*ph) {
      const auto in = read_input(input);
      const auto h = posh::io::frame_hom_from_json(in.doc, in.base);
      auto r = posh::verify_frame_hom(h);
      out = from_report(r);
      if (r.passed) out.object = posh::io::posheaf_to_json(posh::phi(h));
    } else if (*ps) {
      const auto p = load_posheaf(read_input(input));
      auto r = posh::is_frame_sheaf(p, budget);
      out = from_report(r);
      if (r.passed) out.object = posh::io::frame_hom_to_json(posh::psi(p, budget, false));
    } else if (*gen) {
      if (!mutation.empty()) cfg.mutation = posh::mutation_from_string(mutation);
      out = run_gen(cfg, what);
    } else if (*suite) {
      so.budget = budget;
      const auto r = posh::suite::run(so, only);
      out = {r.to_json(), r.passed(), std::nullopt};
    }
  } catch (const posh::Error& e) {
    Json j{{"error", std::string(posh::to_string(e.kind()))}, {"message", e.what()}};
    if (!e.witness().is_null()) j["witness"] = e.witness();
    std::cerr << (format == "human" ? std::string(e.what()) : j.dump(2)) << "\n";
    return exit_for(e);
  } catch (const Json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  }

  const Json& primary = out.object ? *out.object : out.report;
  if (!output.empty()) {
    posh::io::save_json(output, primary);
    if (format == "human") render_human(std::cout, out.report);
    else std::cout << out.report.dump(2) << "\n";
  } else if (format == "human") {
    render_human(std::cout, out.report);
    if (out.object) std::cout << out.object->dump(2) << "\n";
  } else {
    std::cout << primary.dump(2) << "\n";
  }
  return out.passed ? kPass : kFail;
}
