#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcomp/gallery.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kStructureError = 3;

struct CommonFlags {
  std::uint64_t seed = qcomp::Tolerance{}.seed;
  double tol_rank = qcomp::Tolerance{}.rank_rel;
  double tol_eq = qcomp::Tolerance{}.equality_abs;
  std::string json_path;

  qcomp::Tolerance tolerance() const {
    qcomp::Tolerance tol;
    tol.seed = seed;
    tol.rank_rel = tol_rank;
    tol.equality_abs = tol_eq;
    tol.validate();
    return tol;
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "seed for generic central elements");
  cmd->add_option("--tol-rank", flags.tol_rank, "relative rank cutoff");
  cmd->add_option("--tol-eq", flags.tol_eq, "absolute equality tolerance");
  cmd->add_option("--json", flags.json_path, "write the JSON output to this path ('-' for stdout)");
}

void emit_json(const qcomp::Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qcomp::InvalidInput("cannot write " + path);
  out << text;
}

std::string algebra_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.rfind('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

int run_analyze(const std::string& input, const std::vector<std::string>& algebra_files,
                const std::string& q_file, const CommonFlags& flags) {
  const qcomp::Tolerance tol = flags.tolerance();
  std::optional<qcomp::AnalysisRequest> request;
  const std::string prefix = "gallery:";
  if (input.rfind(prefix, 0) == 0) {
    request = qcomp::gallery_case(input.substr(prefix.size()), tol).request;
    if (!algebra_files.empty()) request->algebras.clear();
  } else {
    request = qcomp::AnalysisRequest{
        qcomp::channel_from_json(qcomp::load_json_file(input), tol), {}, std::nullopt};
  }
  for (const std::string& f : algebra_files) {
    request->algebras.push_back(
        {algebra_name(f), qcomp::algebra_spec_from_json(qcomp::load_json_file(f))});
  }
  if (!q_file.empty()) {
    request->q = qcomp::matrix_from_json(qcomp::load_json_file(q_file), "Q");
  }
  const qcomp::Json report = qcomp::analyze(*request, tol);
  if (!flags.json_path.empty()) emit_json(report, flags.json_path);
  if (flags.json_path != "-") std::cout << qcomp::render_report(report);
  return kOk;
}

int run_gallery(bool check, const CommonFlags& flags) {
  const qcomp::Tolerance tol = flags.tolerance();
  const std::vector<qcomp::GalleryCase> cases = qcomp::gallery_cases(tol);
  if (!check) {
    for (const auto& c : cases) std::cout << c.id << "  " << c.description << "\n";
    return kOk;
  }
  qcomp::Json reports = qcomp::Json::object();
  int status = kOk;
  for (const auto& c : cases) {
    const qcomp::CaseCheck result = qcomp::check_case(c, tol);
    reports[c.id] = result.report;
    std::cout << (result.passed ? "PASS " : "FAIL ") << c.id << "\n";
    for (const std::string& f : result.failures) std::cout << "    " << f << "\n";
    if (!result.passed) status = kCheckFailed;
  }
  if (!flags.json_path.empty()) emit_json(reports, flags.json_path);
  return status;
}

int run_complement(const std::string& input, const CommonFlags& flags) {
  const qcomp::Tolerance tol = flags.tolerance();
  const std::string prefix = "gallery:";
  const qcomp::QuantumChannel channel =
      input.rfind(prefix, 0) == 0
          ? qcomp::gallery_case(input.substr(prefix.size()), tol).request.channel
          : qcomp::channel_from_json(qcomp::load_json_file(input), tol);
  const qcomp::Json out = qcomp::channel_to_json(qcomp::complement(channel, tol));
  emit_json(out, flags.json_path.empty() ? "-" : flags.json_path);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correctable and private algebras of quantum channels"};
  app.require_subcommand(1);

  CommonFlags analyze_flags;
  std::string analyze_input;
  std::vector<std::string> algebra_files;
  std::string q_file;
  CLI::App* analyze = app.add_subcommand("analyze", "full analysis of a channel");
  analyze->add_option("channel", analyze_input, "channel JSON file or gallery:<id>")->required();
  analyze->add_option("--algebra", algebra_files, "algebra JSON file (repeatable; first is A, second B)");
  analyze->add_option("--q", q_file, "projection Q as a JSON matrix");
  add_common(analyze, analyze_flags);

  CommonFlags gallery_flags;
  bool check = false;
  CLI::App* gallery = app.add_subcommand("gallery", "list or check the built-in examples");
  gallery->add_flag("--check", check, "re-run every case and compare with its expectations");
  add_common(gallery, gallery_flags);

  CommonFlags complement_flags;
  std::string complement_input;
  CLI::App* comp = app.add_subcommand("complement", "print the complementary channel as JSON");
  comp->add_option("channel", complement_input, "channel JSON file or gallery:<id>")->required();
  add_common(comp, complement_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (analyze->parsed()) return run_analyze(analyze_input, algebra_files, q_file, analyze_flags);
    if (gallery->parsed()) return run_gallery(check, gallery_flags);
    if (comp->parsed()) return run_complement(complement_input, complement_flags);
  } catch (const qcomp::InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const qcomp::StructureError& e) {
    std::cerr << "structure error: " << e.what() << "\n";
    return kStructureError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStructureError;
  }
  return kOk;
}
