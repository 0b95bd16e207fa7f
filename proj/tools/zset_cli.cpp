// zset: suites, categorical operations, forcing and the WISC demo over
// JSON inputs. Exit 0 on success, 1 on a property violation, 2 on bad input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zset/zset.hpp"

using namespace zset;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct BoundsFlags {
  std::string file;
  std::optional<std::uint32_t> support, coord, depth, orbits;

  void add(CLI::App* app) {
    app->add_option("--bounds", file, "search bounds as JSON");
    app->add_option("--max-support", support, "max support size");
    app->add_option("--max-coord", coord, "coordinates are < this");
    app->add_option("--max-depth", depth, "max depth value");
    app->add_option("--max-orbits", orbits, "max orbits per object");
  }

  SearchBounds get(SearchBounds b) const {
    if (!file.empty()) b = bounds_from_json(read_json(file));
    if (support) b.max_support = *support;
    if (coord) b.max_coord = *coord;
    if (depth) b.max_depth = *depth;
    if (orbits) b.max_orbits = *orbits;
    b.validate();
    return b;
  }
};

SearchBounds make_bounds(std::uint32_t s, std::uint32_t c, std::uint32_t d, std::uint32_t o) {
  SearchBounds b;
  b.max_support = s;
  b.max_coord = c;
  b.max_depth = d;
  b.max_orbits = o;
  return b;
}

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

int run_suite(const std::string& kind, json inputs, const std::string& out) {
  auto t0 = std::chrono::steady_clock::now();
  Certificate c = issue(kind, std::move(inputs));
  const bool ok = c.payload.at("failures").empty();
  std::cerr << c.payload.at("instances").get<std::size_t>() << " instances checked, "
            << c.payload.at("failures").size() << " failures\n";
  emit({{"ok", ok}, {"elapsed_ms", ms_since(t0)}, {"certificate", to_json(c)}}, out);
  return ok ? kOk : kViolation;
}

int verify(const std::string& path, const std::string& out) {
  json j = read_json(path);
  std::vector<json> certs;
  if (j.is_array()) {
    certs.assign(j.begin(), j.end());
  } else {
    certs.push_back(j);
  }
  json results = json::array();
  bool all = true;
  for (const auto& cj : certs) {
    // a CLI report carries its certificate under "certificate"
    auto r = replay(certificate_from_json(cj.contains("kind") ? cj : cj.value("certificate", cj)));
    all = all && r.identical;
    json e = {{"kind", r.kind}, {"identical", r.identical}};
    if (!r.identical) e["first_difference"] = r.first_difference;
    results.push_back(e);
  }
  std::cerr << certs.size() << " certificates replayed, " << (all ? "all identical" : "MISMATCH") << "\n";
  emit({{"identical", all}, {"count", certs.size()}, {"results", results}}, out);
  return all ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z-set topos toolkit"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  std::string output, certificate;
  app.add_option("-o,--output", output, "write the JSON report here instead of stdout");
  app.add_option("--verify-certificate", certificate, "replay a certificate, a report holding one, or an array of them");

  BoundsFlags b41, b42, bprops, bforce, bdemo;

  auto* l41 = app.add_subcommand("lemma41", "hom nonemptiness vs divisibility vs brute force");
  b41.add(l41);

  auto* l42 = app.add_subcommand("lemma42", "fibred product orbit depths vs lcm");
  b42.add(l42);

  auto* props = app.add_subcommand("props", "booleanness, epis, extensivity, exponentials, adjunctions");
  std::string suite = "all";
  std::size_t exp_cap = 4096;
  props->add_option("--suite", suite, "suite name")->check(CLI::IsMember({"all"}));
  props->add_option("--exp-cap", exp_cap, "skip exponential triples with |Y|^|X| above this");
  bprops.add(props);

  auto* pb = app.add_subcommand("pullback", "A x_S B for A -> S, B -> S");
  std::string pa, pbf, ps;
  pb->add_option("A", pa, "object over S")->required();
  pb->add_option("B", pbf, "object over S")->required();
  pb->add_option("S", ps, "base object")->required();

  auto* hom = app.add_subcommand("hom", "all maps X -> Y");
  std::string hx, hy;
  std::size_t hom_limit = 1000;
  hom->add_option("X", hx)->required();
  hom->add_option("Y", hy)->required();
  hom->add_option("--limit", hom_limit, "list at most this many maps");

  auto* frc = app.add_subcommand("force", "U |- phi within bounds");
  std::string fobj, fformula, fcorpus, fctx;
  bool all_stages = false;
  frc->add_option("--object", fobj, "stage U (default: the one-point object)");
  auto* fopt = frc->add_option("--formula", fformula, "formula file");
  frc->add_option("--corpus", fcorpus, "built-in formula name")->excludes(fopt);
  frc->add_option("--context", fctx, "parameter values over U");
  frc->add_flag("--all-stages", all_stages, "let forall range over disconnected stages too");
  bforce.add(frc);

  auto* demo = app.add_subcommand("wisc-demo", "exhaustive non-epi certificates for a cover Y ->> V");
  std::string dcover, dbase;
  std::optional<Depth> dtrunc;
  demo->add_option("--cover", dcover, "Y as a ZSet, or {\"Y\", \"V\", \"map\"}")->required();
  demo->add_option("--base", dbase, "V (default: the one-point object)");
  demo->add_option("--truncation", dtrunc, "Omega truncation N (default max_depth + 1)");
  bdemo.add(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (!certificate.empty()) return verify(certificate, output);

    if (*l41) return run_suite("lemma41", {{"bounds", to_json(b41.get(make_bounds(2, 2, 6, 1)))}}, output);
    if (*l42) return run_suite("lemma42", {{"bounds", to_json(b42.get(make_bounds(1, 1, 6, 1)))}}, output);
    if (*props) {
      return run_suite("props", {{"bounds", to_json(bprops.get(make_bounds(1, 2, 4, 2)))}, {"exp_cap", exp_cap}},
                       output);
    }

    if (*pb) {
      ZSet s = zset_from_json(read_json(ps));
      auto [a, fa] = over_from_json(read_json(pa), s);
      auto [bb, fb] = over_from_json(read_json(pbf), s);
      auto p = pullback(fa, fb);
      emit({{"object", to_json(p.object)}, {"proj1", to_json(p.proj1)}, {"proj2", to_json(p.proj2)}}, output);
      return kOk;
    }

    if (*hom) {
      ZSet x = zset_from_json(read_json(hx));
      ZSet y = zset_from_json(read_json(hy));
      json maps = json::array();
      for_each_map(x, y, [&](const EqMap& f) {
        maps.push_back(to_json(f));
        return maps.size() < hom_limit;
      });
      emit({{"count", count_maps(x, y)}, {"maps", maps}}, output);
      return kOk;
    }

    if (*frc) {
      if (fformula.empty() && fcorpus.empty()) throw InputError("force needs --formula or --corpus");
      json in = {{"formula", fformula.empty() ? corpus_entry(fcorpus).text : trim(read_text(fformula))},
                 {"bounds", to_json(bforce.get(SearchBounds{}))}};
      if (!fobj.empty()) in["stage"] = read_json(fobj);
      if (!fctx.empty()) in["context"] = read_json(fctx);
      if (all_stages) in["connected_only"] = false;
      auto t0 = std::chrono::steady_clock::now();
      Certificate c = issue("force", in);
      json rep = {{"status", c.payload.at("status")},
                  {"witness", c.payload.at("witness")},
                  {"bounds", in.at("bounds")},
                  {"elapsed_ms", ms_since(t0)},
                  {"certificate", to_json(c)}};
      emit(rep, output);
      return c.payload.at("revalidated").get<bool>() ? kOk : kViolation;
    }

    if (*demo) {
      json cj = read_json(dcover);
      if (!cj.contains("Y")) {
        cj = {{"Y", cj}, {"V", dbase.empty() ? to_json(terminal()) : read_json(dbase)}};
      }
      (void)cover_from_json(cj);
      json in = {{"cover", cj}, {"bounds", to_json(bdemo.get(make_bounds(1, 1, 4, 2)))}};
      if (dtrunc) in["N"] = *dtrunc;
      auto t0 = std::chrono::steady_clock::now();
      Certificate c = issue("wisc_demo", in);
      const bool ok = c.payload.at("violations").empty() && c.payload.at("epi_composites") == 0;
      std::cerr << c.payload.at("cover_instances").get<std::size_t>() << " (T, r) instances, "
                << c.payload.at("instances").get<std::size_t>() << " maps into Omega, "
                << c.payload.at("epi_composites").get<std::size_t>() << " epi\n";
      emit({{"ok", ok},
            {"elapsed_ms", ms_since(t0)},
            {"omega", c.payload.at("omega")},
            {"cover_instances", c.payload.at("cover_instances")},
            {"epi_composites", c.payload.at("epi_composites")},
            {"certificate", to_json(c)}},
           output);
      return ok ? kOk : kViolation;
    }

    std::cerr << app.help();
    return kInputError;
  } catch (const TheoremViolation& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
}
