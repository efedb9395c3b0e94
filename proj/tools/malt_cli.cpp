// Command-line front end. Talks to the library only through malt.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "malt/malt.h"

namespace {

using Json = nlohmann::ordered_json;

struct Released {
  void operator()(malt_algebra* a) const { malt_algebra_release(a); }
  void operator()(char* s) const { malt_string_release(s); }
};
using AlgebraPtr = std::unique_ptr<malt_algebra, Released>;
using StringPtr = std::unique_ptr<char, Released>;

int exit_code(int status) {
  if (status == MALT_OK || status == MALT_FAIL || status == MALT_INCONCLUSIVE) {
    return status;
  }
  return 2;
}

int report_error(int status) {
  std::cerr << "error: " << malt_status_name(status);
  const std::string detail = malt_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  return exit_code(status);
}

// Loads the algebra or prints the error; nullptr on failure.
AlgebraPtr load(const std::string& path, int& code) {
  malt_algebra* raw = nullptr;
  const int status = malt_algebra_from_file(path.c_str(), &raw);
  if (status != MALT_OK) {
    code = report_error(status);
    return nullptr;
  }
  return AlgebraPtr(raw);
}

std::optional<malt_kind> kind_from(const std::string& name) {
  if (name == "jonsson") return MALT_KIND_JONSSON;
  if (name == "alvin") return MALT_KIND_ALVIN;
  if (name == "gumm") return MALT_KIND_GUMM;
  if (name == "day") return MALT_KIND_DAY;
  return std::nullopt;
}

std::string join(const Json& list, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += sep;
    out += list[i].is_string() ? list[i].get<std::string>() : list[i].dump();
  }
  return out;
}

void print_violations(const Json& check, const std::string& indent) {
  for (const auto& v : check["violations"]) {
    std::cout << indent << "(" << v["tag"].get<std::string>() << ") at t_"
              << v["position"] << ", point (" << join(v["point"]) << "): "
              << v["lhs"] << " != " << v["rhs"] << "\n";
  }
  const auto shown = check["violations"].size();
  const auto total = check["violation_count"].get<std::size_t>();
  if (total > shown) {
    std::cout << indent << "... " << total - shown << " more\n";
  }
}

void print_level(const Json& r) {
  const std::string kind = r["kind"];
  const std::string status = r["status"];
  if (status == "found") {
    std::cout << kind << " level = " << r["level"] << "\n";
  } else if (r["level"].is_null()) {
    std::cout << kind << " level: none up to " << r["cap_n"];
    if (!r["clone_complete"].get<bool>()) {
      std::cout << " (clone capped at " << r["clone_size"] << " members)";
    }
    std::cout << "\n";
    return;
  } else {
    std::cout << kind << " level <= " << r["level"] << " (clone capped at "
              << r["clone_size"] << " members)\n";
  }
  const auto& terms = r["witness_terms"];
  const auto& tables = r["witness"]["tables"];
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::cout << "  t_" << i << " = " << terms[i].get<std::string>() << "   ["
              << join(tables[i], "") << "]\n";
  }
}

void print_inclusion_witness(const Json& detail, const std::string& indent) {
  if (!detail.contains("violations")) return;
  for (const auto& v : detail["violations"]) {
    std::cout << indent << "witness: relations (" << join(v["relations"])
              << "), pair (" << join(v["pair"]) << "), "
              << v["direction"].get<std::string>() << "\n";
    break;
  }
}

void print_suite(const Json& r) {
  for (const auto& a : r["assertions"]) {
    const bool holds = a["holds"];
    std::cout << (holds ? "PASS" : "FAIL") << ": ["
              << a["label"].get<std::string>() << "] "
              << a["statement"].get<std::string>() << "\n";
    if (!holds) print_inclusion_witness(a["detail"], "  ");
  }
  for (const auto& n : r["notes"]) {
    std::cout << "note: " << n.get<std::string>() << "\n";
  }
  std::cout << r["suite"].get<std::string>() << " on "
            << r["algebra"].get<std::string>() << ": "
            << r["outcome"].get<std::string>() << "\n";
}

void print_info(const Json& r) {
  std::cout << "name: " << r["name"].get<std::string>() << "\n"
            << "size: " << r["size"] << "\n"
            << "operations:";
  for (const auto& op : r["operations"]) {
    std::cout << " " << op["name"].get<std::string>() << "/" << op["arity"];
  }
  std::cout << "\ncongruences: " << r["congruences"] << "\n"
            << "tolerances: " << r["tolerances"] << "\n"
            << "congruence lattice modular: "
            << (r["congruence_modular"].get<bool>() ? "yes" : "no") << "\n"
            << "congruence lattice distributive: "
            << (r["congruence_distributive"].get<bool>() ? "yes" : "no") << "\n";
}

void print_conlat(const Json& r) {
  std::cout << r["size"] << " congruences\n";
  std::size_t i = 0;
  for (const auto& c : r["congruences"]) {
    std::cout << "  " << i++ << ": " << c["text"].get<std::string>() << "\n";
  }
  for (const char* law : {"modular", "distributive"}) {
    const auto& l = r[law];
    std::cout << law << ": " << (l["holds"].get<bool>() ? "yes" : "no");
    if (!l["witness"].is_null()) std::cout << " (witness " << join(l["witness"]) << ")";
    std::cout << "\n";
  }
}

void print_star(const Json& r) {
  const std::string kind = r["kind"];
  if (!r["input_check"]["valid"].get<bool>()) {
    std::cout << "input is not a valid " << kind << " sequence:\n";
    print_violations(r["input_check"], "  ");
    return;
  }
  std::cout << "applied star " << r["times"] << " time(s); output "
            << (r["output_check"]["valid"].get<bool>() ? "is" : "is NOT")
            << " a valid " << kind << " sequence\n";
  print_violations(r["output_check"], "  ");
  std::size_t i = 0;
  for (const auto& t : r["output"]["tables"]) {
    std::cout << "  s_" << i++ << " = [" << join(t, "") << "]\n";
  }
  if (r.contains("tm_check")) {
    const auto& t = r["tm_check"];
    std::cout << "(T_" << t["m"] << ") on " << t["tolerances"] << " tolerances: "
              << (t["check"]["valid"].get<bool>() ? "PASS" : "FAIL") << "\n";
    print_violations(t["check"], "  ");
  }
  std::cout << (r["holds"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

// Prints a report either as JSON or through `human`, then maps the status.
template <class Human>
int emit(int status, char* raw, bool json, Human human) {
  StringPtr text(raw);
  if (status >= MALT_ERR_PARSE && !text) return report_error(status);
  if (text) {
    if (json) {
      const std::string_view body(text.get());
      std::cout << body;
      if (!body.empty() && body.back() != '\n') std::cout << '\n';
    } else {
      human(Json::parse(text.get()));
    }
  }
  if (status >= MALT_ERR_PARSE) return report_error(status);
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"malt: finite algebra workbench"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads")
      ->check(CLI::Range(1u, 256u));
  bool json = false;

  std::string path;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("algebra", path, "algebra JSON file")->required();
    cmd->add_flag("--json", json, "emit JSON");
  };

  auto* info = app.add_subcommand("info", "summary of an algebra");
  add_common(info);
  auto* conlat = app.add_subcommand("conlat", "congruence lattice");
  add_common(conlat);

  std::string kind_name = "alvin";
  unsigned cap_n = 12;
  std::size_t cap_clone = 1'000'000;
  bool allow_large_day = false;
  auto* level = app.add_subcommand("level", "minimal length of a term sequence");
  add_common(level);
  level->add_option("--kind", kind_name, "jonsson, alvin, gumm or day")
      ->check(CLI::IsMember({"jonsson", "alvin", "gumm", "day"}));
  level->add_option("--cap-n", cap_n, "largest length searched");
  level->add_option("--cap-clone", cap_clone, "largest clone generated");
  level->add_flag("--allow-large-day", allow_large_day,
                  "allow Day levels on algebras with more than 2 elements");

  unsigned arity = 3;
  auto* free_cmd = app.add_subcommand("free", "free algebra on k generators");
  free_cmd->add_option("algebra", path, "algebra JSON file")->required();
  free_cmd->add_option("--arity", arity, "number of generators")->required();
  free_cmd->add_option("--cap-clone", cap_clone, "largest clone generated");

  std::string sequence_path;
  std::string star_kind = "gumm";
  unsigned times = 1;
  unsigned check_tm = 0;
  auto* star = app.add_subcommand("star", "apply the star transform");
  add_common(star);
  star->add_option("sequence", sequence_path, "sequence JSON file")->required();
  star->add_option("--kind", star_kind, "gumm or alvin")
      ->check(CLI::IsMember({"gumm", "alvin"}));
  star->add_option("--times", times, "number of star applications");
  star->add_option("--check-tm", check_tm, "check (T_m) for this m");

  std::string suite;
  Json params = Json::object();
  std::optional<int> clause;
  std::optional<std::size_t> ell, n, m, r, h, g;
  auto* verify = app.add_subcommand("verify", "run an identity suite");
  verify->set_help_flag("--help", "print this help message and exit");
  add_common(verify);
  verify->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"theorem4", "theorem5", "corollary6", "tip",
                             "corollary11", "theorem12", "theorem8", "remark7"}));
  verify->add_option("--clause", clause);
  verify->add_option("--ell", ell);
  verify->add_option("--n", n);
  verify->add_option("--m", m);
  verify->add_option("--r", r);
  verify->add_option("--h", h);
  verify->add_option("--g", g);
  verify->add_option("--cap-n", cap_n, "largest length searched");
  verify->add_option("--cap-clone", cap_clone, "largest clone generated");
  verify->add_flag("--allow-large-day", allow_large_day);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  malt_set_threads(threads);

  int code = 0;
  if (*free_cmd) {
    auto algebra = load(path, code);
    if (!algebra) return code;
    char* out = nullptr;
    const int status = malt_free_algebra(algebra.get(), arity, cap_clone, &out);
    return emit(status, out, true, [](const Json&) {});
  }

  auto algebra = load(path, code);
  if (!algebra) return code;
  char* out = nullptr;

  if (*info) {
    const int status = malt_info(algebra.get(), &out);
    return emit(status, out, json, print_info);
  }
  if (*conlat) {
    const int status = malt_conlat(algebra.get(), &out);
    return emit(status, out, json, print_conlat);
  }
  if (*level) {
    malt_level_options o;
    malt_level_options_init(&o);
    o.kind = *kind_from(kind_name);
    o.cap_n = cap_n;
    o.cap_clone = cap_clone;
    o.allow_large_day = allow_large_day ? 1 : 0;
    const int status = malt_level(algebra.get(), &o, &out);
    return emit(status, out, json, print_level);
  }
  if (*star) {
    std::ifstream in(sequence_path);
    if (!in) {
      std::cerr << "error: cannot read " << sequence_path << "\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    malt_star_options o;
    malt_star_options_init(&o);
    o.kind = *kind_from(star_kind);
    o.times = times;
    o.check_tm = check_tm;
    const int status = malt_star(algebra.get(), buffer.str().c_str(), &o, &out);
    return emit(status, out, json, print_star);
  }
  if (*verify) {
    if (clause) params["clause"] = *clause;
    for (auto [key, value] : {std::pair{"ell", ell}, {"n", n}, {"m", m},
                              {"r", r}, {"h", h}, {"g", g}}) {
      if (value) params[key] = *value;
    }
    params["cap_n"] = cap_n;
    params["cap_clone"] = cap_clone;
    params["allow_large_day"] = allow_large_day;
    const std::string text = params.dump();
    const int status =
        malt_verify(algebra.get(), suite.c_str(), text.c_str(), &out);
    return emit(status, out, json, print_suite);
  }
  return 2;
}
