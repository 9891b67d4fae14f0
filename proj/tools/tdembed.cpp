// tdembed: construct, verify, and analyze embeddings of Latin squares, MOLS,
// and transversal designs into projective spaces over exact skew fields.
//
// Exit codes: 0 success/valid, 1 validation failed (report carries the
// witness), 2 input/format error, 3 unsupported size.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "tdembed/serialize.hpp"

using namespace tdembed;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFormat = 2;
constexpr int kExitUnsupported = 3;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::UnsupportedSize:
    case Errc::SearchSpaceTooLarge:
    case Errc::NotFinite:
      return kExitUnsupported;
    default:
      return kExitFormat;
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::FormatError, "cannot open '" + path + "'");
  try {
    Json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& ex) {
    fail(Errc::FormatError, std::string("JSON parse error: ") + ex.what());
  }
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = dump_stable(j);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::FormatError, "cannot write '" + out_path + "'");
  out << text;
}

// --group accepts a catalog name, a convenience preset, or a JSON file path
GeneratedGroup load_group(const std::string& spec, int dim) {
  if (std::filesystem::exists(spec)) return group_from_json(read_json_file(spec));
  auto starts = [&](const std::string& pre) { return spec.rfind(pre, 0) == 0; };
  if (starts("additive:") || starts("additive-prime:")) {
    bool prime_only = starts("additive-prime:");
    DescPtr d = descriptor_from_name(spec.substr(prime_only ? 15 : 9));
    size_t ambient = dim >= 2 ? static_cast<size_t>(dim) - 1 : 1;
    std::vector<std::vector<Scalar>> gens;
    std::vector<Scalar> basis;
    if (prime_only || d->kind == FieldKind::PrimeField) {
      basis = {s_one(d)};
    } else if (d->kind == FieldKind::ExtField) {
      for (int i = 0; i < fp_deg(d->modulus); ++i) {
        std::vector<uint32_t> c(fp_deg(d->modulus), 0);
        c[i] = 1;
        basis.push_back(s_fin(d, c));
      }
    } else {
      basis = {s_one(d)};
    }
    for (size_t pos = 0; pos < ambient; ++pos) {
      for (const Scalar& b : basis) {
        std::vector<Scalar> v(ambient, s_zero(d));
        v[pos] = b;
        gens.push_back(std::move(v));
      }
    }
    return additive_group(d, ambient, gens);
  }
  if (starts("sdzeta:")) {
    uint32_t m = static_cast<uint32_t>(std::stoul(spec.substr(7)));
    DescPtr d = make_cyclotomic(m);
    return semidirect_cyclic(nf_generator(d), {s_one(d)});
  }
  if (starts("sdtrans:")) {
    DescPtr d = descriptor_from_name(spec.substr(8));
    return semidirect_cyclic(s_one(d), {s_one(d)});
  }
  return catalog(spec);
}

// embeddings, TDs, or Latin squares all expose a TD for the loop commands
TransversalDesign load_td_like(const Json& j) {
  if (j.contains("cells")) return latin_to_td(latin_from_json(j));
  if (j.contains("points") && j.contains("part_hyperplanes"))
    return embedded_from_json(j).td;
  if (j.contains("blocks")) return td_from_json(j);
  fail(Errc::FormatError, "expected a Latin square, TD, or embedding file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"embeddings of Latin squares, MOLS and transversal designs into P^d(D)"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker cap (scans are sequential)")->check(CLI::Range(1, 1024));

  std::string out_path;

  // catalog ------------------------------------------------------------
  auto* cat = app.add_subcommand("catalog", "named group presets");
  cat->require_subcommand(1);
  cat->add_subcommand("list", "list preset names");
  auto* cat_gen = cat->add_subcommand("gen", "emit a preset as group JSON");
  std::string cat_name;
  cat_gen->add_option("name", cat_name, "preset name, e.g. Q8 or Dstar:4")->required();
  cat_gen->add_option("--out", out_path, "output file (stdout otherwise)");

  // embed ----------------------------------------------------------------
  auto* embed = app.add_subcommand("embed", "construct and analyze embeddings");
  embed->require_subcommand(1);

  auto* construct = embed->add_subcommand("construct", "build an embedding from a group");
  std::string type, group_spec;
  int dim = 2;
  construct->add_option("--type", type, "additive | multiplicative | semidirect")->required();
  construct->add_option("--group", group_spec, "catalog preset, convenience preset, or JSON file")
      ->required();
  construct->add_option("--dim", dim, "projective dimension d");
  construct->add_option("--out", out_path, "output file");

  auto* verify = embed->add_subcommand("verify", "check every embedding axiom");
  std::string verify_path;
  verify->add_option("file", verify_path, "embedding JSON")->required();

  auto* tp = embed->add_subcommand("transversal-points", "Thm-4 formula set");
  std::string tp_path;
  bool tp_brute = false;
  tp->add_option("file", tp_path, "embedding JSON")->required();
  tp->add_flag("--brute", tp_brute, "cross-check against the exhaustive PG scan");
  tp->add_option("--out", out_path, "output file");

  auto* extend = embed->add_subcommand("extend", "extend to k = |D_G| + 1 parts");
  std::string extend_path;
  extend->add_option("file", extend_path, "embedding JSON")->required();
  extend->add_option("--out", out_path, "output file");

  auto* mols_cmd = embed->add_subcommand("mols", "extract the MOLS set of an embedded TD");
  std::string mols_path;
  mols_cmd->add_option("file", mols_path, "embedding or TD JSON")->required();
  mols_cmd->add_option("--out", out_path, "output file");

  // design -----------------------------------------------------------------
  auto* design = app.add_subcommand("design", "combinatorial layer");
  design->require_subcommand(1);
  auto* dv = design->add_subcommand("validate", "validate a Latin square or TD");
  std::string dv_path;
  dv->add_option("file", dv_path)->required();
  auto* dt = design->add_subcommand("transversals", "enumerate transversals");
  std::string dt_path;
  std::size_t dt_limit = 0;
  dt->add_option("file", dt_path)->required();
  dt->add_option("--limit", dt_limit, "stop after this many");
  dt->add_option("--out", out_path, "output file");
  auto* dm = design->add_subcommand("mols-check", "pairwise orthogonality of a MOLS file");
  std::string dm_path;
  dm->add_option("file", dm_path)->required();

  // loop ---------------------------------------------------------------
  auto* loop = app.add_subcommand("loop", "the geometric loop on P1");
  loop->require_subcommand(1);
  auto* le = loop->add_subcommand("extract", "Cayley table with flags");
  std::string le_path;
  int base1 = -1, base2 = -1;
  le->add_option("file", le_path)->required();
  le->add_option("--base1", base1, "identity choice in P1");
  le->add_option("--base2", base2, "auxiliary base point in P2");
  le->add_option("--out", out_path, "output file");

  // oracle ----------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "exhaustive PG(d,q) scans");
  oracle->require_subcommand(1);
  auto* scan = oracle->add_subcommand("scan", "search TD configurations on a frame");
  uint64_t oq = 0;
  int od = 2, on = 0;
  std::string oframe;
  scan->add_option("--q", oq, "field size")->required();
  scan->add_option("--d", od, "projective dimension")->required();
  scan->add_option("--frame", oframe, "concurrent | triangle")->required();
  scan->add_option("--n", on, "TD order")->required();
  scan->add_option("--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitFormat;
  }

  try {
    if (cat->parsed()) {
      if (cat->get_subcommand("list")->parsed()) {
        Json j = Json::array();
        for (const auto& n : catalog_names()) j.push_back(n);
        emit(j, out_path);
        return kExitOk;
      }
      emit(group_to_json(catalog(cat_name)), out_path);
      return kExitOk;
    }

    if (embed->parsed()) {
      if (construct->parsed()) {
        GeneratedGroup g = load_group(group_spec, dim);
        EmbeddedTd e = type == "additive"        ? construct_additive(g)
                       : type == "multiplicative" ? construct_multiplicative(g, dim)
                       : type == "semidirect"     ? construct_semidirect(g, dim)
                                                  : (fail(Errc::FormatError,
                                                          "--type must be additive, multiplicative "
                                                          "or semidirect"),
                                                     EmbeddedTd{});
        emit(embedded_to_json(e), out_path);
        return kExitOk;
      }
      if (verify->parsed()) {
        EmbeddedTd e = embedded_from_json(read_json_file(verify_path));
        VerifyReport r = verify_embedding(e);
        emit(verify_report_to_json(r), out_path);
        return r.ok ? kExitOk : kExitInvalid;
      }
      if (tp->parsed()) {
        EmbeddedTd e = embedded_from_json(read_json_file(tp_path));
        TransversalPointSet set = transversal_points(e);
        Json j;
        j["description"] = set.description;
        j["count"] = set.points.size();
        Json pts = Json::array();
        for (const HomPoint& p : set.points) {
          Json coords = Json::array();
          for (const Scalar& c : p.coords()) coords.push_back(scalar_to_json(c));
          pts.push_back(std::move(coords));
        }
        j["points"] = std::move(pts);
        bool agrees = true;
        if (tp_brute) {
          PGSpace space = enumerate_pg(field_size(*e.desc), e.d);
          auto brute = brute_transversal_points(space, e);
          std::set<std::string> a, b;
          for (const auto& p : set.points) a.insert(p.key());
          for (const auto& p : brute) b.insert(p.key());
          agrees = a == b;
          j["brute_count"] = brute.size();
          j["brute_agrees"] = agrees;
        }
        emit(j, out_path);
        return agrees ? kExitOk : kExitInvalid;
      }
      if (extend->parsed()) {
        EmbeddedTd e = embedded_from_json(read_json_file(extend_path));
        emit(embedded_to_json(extend_to_max_td(e)), out_path);
        return kExitOk;
      }
      if (mols_cmd->parsed()) {
        TransversalDesign td = load_td_like(read_json_file(mols_path));
        emit(mols_to_json(td_to_mols(td)), out_path);
        return kExitOk;
      }
    }

    if (design->parsed()) {
      if (dv->parsed()) {
        Json j = read_json_file(dv_path);
        Json report;
        if (j.contains("cells")) {
          LatinSquare ls;
          ls.n = j.at("n").get<int>();
          ls.cells = j.at("cells").get<std::vector<std::vector<int>>>();
          auto v = validate_latin_square(ls);
          report["ok"] = !v.has_value();
          if (v) {
            report["violation"] = v->what;
            report["index"] = v->index;
            report["symbol"] = v->symbol;
          }
        } else {
          TransversalDesign td = td_from_json(j);
          auto v = validate_td(td);
          report["ok"] = !v.has_value();
          if (v) {
            report["violation"] = v->what;
            report["a"] = v->a;
            report["b"] = v->b;
          }
        }
        emit(report, out_path);
        return report["ok"].get<bool>() ? kExitOk : kExitInvalid;
      }
      if (dt->parsed()) {
        LatinSquare ls = latin_from_json(read_json_file(dt_path));
        auto ts = find_transversals(
            ls, dt_limit ? std::optional<size_t>(dt_limit) : std::nullopt);
        Json j;
        j["count"] = ts.size();
        Json arr = Json::array();
        for (const auto& t : ts) arr.push_back(transversal_to_json(t));
        j["transversals"] = std::move(arr);
        emit(j, out_path);
        return kExitOk;
      }
      if (dm->parsed()) {
        MolsSet ms = mols_from_json(read_json_file(dm_path));
        Json j;
        j["squares"] = ms.squares.size();
        bool ok = true;
        for (size_t a = 0; a < ms.squares.size() && ok; ++a) {
          for (size_t b = a + 1; b < ms.squares.size(); ++b) {
            OrthoResult r = check_orthogonal(ms.squares[a], ms.squares[b]);
            if (!r.ok) {
              ok = false;
              j["witness"] = {{"square1", a},
                              {"square2", b},
                              {"cell1", {r.cell1.first, r.cell1.second}},
                              {"cell2", {r.cell2.first, r.cell2.second}}};
              break;
            }
          }
        }
        j["ok"] = ok;
        emit(j, out_path);
        return ok ? kExitOk : kExitInvalid;
      }
    }

    if (loop->parsed() && le->parsed()) {
      TransversalDesign td = load_td_like(read_json_file(le_path));
      emit(loop_to_json(loop_operation(td, base1, base2)), out_path);
      return kExitOk;
    }

    if (oracle->parsed() && scan->parsed()) {
      PGSpace space = enumerate_pg(oq, od);
      FrameShape shape;
      if (oframe == "concurrent") shape = FrameShape::Concurrent;
      else if (oframe == "triangle") shape = FrameShape::Triangle;
      else fail(Errc::FormatError, "--frame must be concurrent or triangle");
      FrameSearchResult r = search_td_on_frame(space, shape, on);
      emit(frame_search_to_json(r, space), out_path);
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  }
  std::cerr << "error: no subcommand executed\n";
  return kExitFormat;
}
