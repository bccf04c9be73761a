#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "prnu/analysis.hpp"
#include "prnu/error.hpp"

namespace fs = std::filesystem;

namespace prnu::cli {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else if (ch != '\r') {
      fields.back() += ch;
    }
  }
  return fields;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<bool> parse_label(const std::string& text) {
  const std::string s = lower(text);
  if (s == "1" || s == "true" || s == "pos" || s == "positive") return true;
  if (s == "0" || s == "false" || s == "neg" || s == "negative") return false;
  return std::nullopt;
}

// The label comes from a "label" column, else from a pos/neg filename prefix.
void read_scores(const fs::path& file, std::vector<LabeledScore>& scores) {
  std::ifstream in(file);
  if (!in) fail(Errc::IoFailure, "cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) return;
  const auto header = split_csv_line(line);
  std::optional<std::size_t> score_col, label_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string h = lower(header[i]);
    if (h == "score" || (h == "pce" && !score_col)) score_col = i;
    if (h == "label") label_col = i;
  }
  if (!score_col) fail(Errc::MalformedHeader, file.string() + ": no score or pce column");

  std::optional<bool> file_label;
  const std::string stem = lower(file.filename().string());
  if (stem.rfind("pos", 0) == 0) file_label = true;
  if (stem.rfind("neg", 0) == 0) file_label = false;
  if (!label_col && !file_label) {
    fail(Errc::MalformedHeader, file.string() + ": no label column and no pos/neg prefix");
  }

  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    const std::string where = file.string() + ":" + std::to_string(lineno);
    if (*score_col >= fields.size() || (label_col && *label_col >= fields.size())) {
      fail(Errc::MalformedHeader, where + ": missing fields");
    }
    LabeledScore s;
    try {
      std::size_t used = 0;
      s.score = std::stod(fields[*score_col], &used);
      if (used != fields[*score_col].size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      fail(Errc::MalformedHeader, where + ": bad score '" + fields[*score_col] + "'");
    }
    const auto label = label_col ? parse_label(fields[*label_col]) : file_label;
    if (!label) fail(Errc::MalformedHeader, where + ": bad label '" + fields[*label_col] + "'");
    s.positive = *label;
    scores.push_back(s);
  }
}

}  // namespace

void register_roc(CLI::App& app, RocArgs& o) {
  app.add_option("directory", o.directory, "Directory of labelled score CSVs")->required();
  app.add_option("-o,--out", o.out, "Write the curve here instead of standard output");
}

int run_roc(const RocArgs& o, const Common& c, std::ostream& out, std::ostream& err) {
  (void)c;
  ConfigLog log;
  log.emplace_back("directory", o.directory);
  log.emplace_back("out", o.out.empty() ? "-" : o.out);
  log_config(err, "roc", log);

  if (!fs::is_directory(o.directory)) fail(Errc::IoFailure, o.directory + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) fail(Errc::EmptyStream, o.directory + ": no .csv files");

  std::vector<LabeledScore> scores;
  for (const auto& f : files) read_scores(f, scores);
  const RocCurve curve = compute_roc(scores);

  if (o.out.empty()) {
    curve.write_csv(out);
  } else {
    std::ofstream file(o.out);
    if (!file) fail(Errc::IoFailure, "cannot create " + o.out);
    curve.write_csv(file);
  }
  err << "auc=" << format_real(curve.auc()) << '\n';
  return kExitOk;
}

}  // namespace prnu::cli
