#include "quiverhom/fixtures.hpp"

#include <map>

namespace qh {

namespace {

const std::map<std::string, std::string>& table() {
  static const std::map<std::string, std::string> t = {
      {"a3",
       "field 101\n"
       "vertices 1 2 3\n"
       "arrow a: 1 -> 2\n"
       "arrow b: 2 -> 3\n"},
      {"zigzag4",
       "field 101\n"
       "vertices 1 2 3 4\n"
       "arrow a: 1 -> 2\n"
       "arrow b: 2 -> 3\n"
       "arrow c: 4 -> 3\n"
       "relation a*b\n"},
      {"star5",
       "field 101\n"
       "vertices 1 2 3 4 5\n"
       "arrow c: 1 -> 3\n"
       "arrow a: 2 -> 3\n"
       "arrow d: 3 -> 4\n"
       "arrow b: 3 -> 5\n"
       "relation a*b\n"},
      {"loop",
       "field 101\n"
       "vertices 1\n"
       "arrow x: 1 -> 1\n"
       "relation x*x\n"},
      {"cycle2",
       "field 101\n"
       "vertices 1 2\n"
       "arrow a: 1 -> 2\n"
       "arrow b: 2 -> 1\n"
       "relation a*b\n"
       "relation b*a\n"},
      {"semisimple3",
       "field 101\n"
       "vertices 1 2 3\n"},
  };
  return t;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : table()) {
    (void)v;
    out.push_back(k);
  }
  return out;
}

std::string fixture_text(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end()) throw UsageError("unknown fixture '" + name + "'");
  return it->second;
}

Algebra fixture_algebra(const std::string& name, u32 p) {
  return build_parsed(parse_algebra_text(fixture_text(name)), p);
}

}  // namespace qh
