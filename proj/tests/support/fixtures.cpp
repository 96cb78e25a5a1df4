#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testrl::testing {

std::string fixture_path(const std::string& relative) { return std::string(TESTRL_FIXTURES) + "/" + relative; }

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

namespace {

void finish_case(std::vector<LabeledCase>& out, LabeledCase& c, std::string& body) {
  while (!body.empty() && (body.back() == '\n' || body.back() == ' ')) body.pop_back();
  c.source = body + "\n";
  c.expected.focal_method_name = c.focal;
  out.push_back(c);
}

}  // namespace

std::vector<LabeledCase> load_labeled_cases() {
  std::istringstream in(read_file(fixture_path("labeled_tests.txt")));
  std::vector<LabeledCase> out;
  LabeledCase current;
  std::string body;
  bool in_case = false, in_body = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("=== case: ", 0) == 0) {
      if (in_case) finish_case(out, current, body);
      current = LabeledCase{};
      current.name = line.substr(10);
      body.clear();
      in_case = true;
      in_body = false;
      continue;
    }
    if (!in_case) continue;
    if (in_body) {
      body += line + "\n";
    } else if (line.rfind("focal: ", 0) == 0) {
      current.focal = line.substr(7);
    } else if (line.rfind("labels: ", 0) == 0) {
      std::istringstream labels(line.substr(8));
      std::string pair;
      while (labels >> pair) {
        const auto eq = pair.find('=');
        const auto p = property_from_string(pair.substr(0, eq));
        if (!p || eq == std::string::npos) throw std::runtime_error("bad label '" + pair + "' in " + current.name);
        current.expected.set(*p, pair.substr(eq + 1) == "1");
      }
    } else if (line == "---") {
      in_body = true;
    }
  }
  if (in_case) finish_case(out, current, body);
  return out;
}

}  // namespace testrl::testing
