#include "quiverhom/textio.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace qh {

bool ParsedAlgebra::operator==(const ParsedAlgebra& o) const {
  if (p != o.p || vertices != o.vertices || max_len != o.max_len) return false;
  if (!(arrows == o.arrows)) return false;
  if (relations.size() != o.relations.size()) return false;
  for (size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].size() != o.relations[i].size()) return false;
    for (size_t j = 0; j < relations[i].size(); ++j)
      if (relations[i][j].sign != o.relations[i][j].sign ||
          relations[i][j].arrows != o.relations[i][j].arrows)
        return false;
  }
  return true;
}

namespace {

struct Cursor {
  const std::string& line;
  int lineno;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw UsageError("line " + std::to_string(lineno) + ", col " +
                     std::to_string(pos + 1) + ": " + msg);
  }
  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= line.size();
  }
  char peek() {
    skip_ws();
    return pos < line.size() ? line[pos] : '\0';
  }
  std::string token() {
    skip_ws();
    size_t start = pos;
    while (pos < line.size() && !strchr(" \t:*+-=", line[pos])) ++pos;
    if (pos == start) fail("expected a name");
    return line.substr(start, pos - start);
  }
  void expect(char c) {
    skip_ws();
    if (pos >= line.size() || line[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }
  long number() {
    skip_ws();
    size_t start = pos;
    while (pos < line.size() && isdigit((unsigned char)line[pos])) ++pos;
    if (pos == start) fail("expected a number");
    return std::stol(line.substr(start, pos - start));
  }
};

}  // namespace

ParsedAlgebra parse_algebra_text(const std::string& text) {
  ParsedAlgebra pa;
  bool saw_vertices = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    Cursor c{line, lineno};
    if (c.done()) continue;
    std::string kw = c.token();
    if (kw == "field") {
      pa.p = (u32)c.number();
      if (!is_prime_u32(pa.p)) c.fail("field modulus must be prime");
    } else if (kw == "vertices") {
      while (!c.done()) {
        std::string v = c.token();
        if (std::find(pa.vertices.begin(), pa.vertices.end(), v) !=
            pa.vertices.end())
          c.fail("duplicate vertex '" + v + "'");
        pa.vertices.push_back(v);
      }
      saw_vertices = true;
    } else if (kw == "arrow") {
      ParsedAlgebra::Arrow a;
      a.name = c.token();
      c.expect(':');
      a.src = c.token();
      c.expect('-');
      c.expect('>');
      a.tgt = c.token();
      for (const auto& other : pa.arrows)
        if (other.name == a.name) c.fail("duplicate arrow '" + a.name + "'");
      if (std::find(pa.vertices.begin(), pa.vertices.end(), a.src) ==
          pa.vertices.end())
        c.fail("unknown vertex '" + a.src + "'");
      if (std::find(pa.vertices.begin(), pa.vertices.end(), a.tgt) ==
          pa.vertices.end())
        c.fail("unknown vertex '" + a.tgt + "'");
      pa.arrows.push_back(a);
    } else if (kw == "relation") {
      std::vector<ParsedRelTerm> rel;
      int sign = 1;
      if (c.peek() == '-') {
        c.expect('-');
        sign = -1;
      } else if (c.peek() == '+') {
        c.expect('+');
      }
      while (true) {
        ParsedRelTerm term;
        term.sign = sign;
        term.arrows.push_back(c.token());
        while (c.peek() == '*') {
          c.expect('*');
          term.arrows.push_back(c.token());
        }
        for (const auto& nm : term.arrows) {
          bool known = false;
          for (const auto& a : pa.arrows) known |= (a.name == nm);
          if (!known) c.fail("unknown arrow '" + nm + "' in relation");
        }
        rel.push_back(std::move(term));
        if (c.done()) break;
        char s = c.peek();
        if (s == '+') {
          c.expect('+');
          sign = 1;
        } else if (s == '-') {
          c.expect('-');
          sign = -1;
        } else {
          c.fail("expected '+' or '-' between relation terms");
        }
      }
      pa.relations.push_back(std::move(rel));
    } else if (kw == "maxlen") {
      pa.max_len = (int)c.number();
      if (pa.max_len < 2) c.fail("maxlen must be at least 2");
    } else {
      c.fail("unknown directive '" + kw + "'");
    }
  }
  if (!saw_vertices) throw UsageError("algebra file has no vertices line");
  return pa;
}

std::string print_algebra_text(const ParsedAlgebra& pa) {
  std::ostringstream os;
  os << "field " << pa.p << "\n";
  os << "vertices";
  for (const auto& v : pa.vertices) os << " " << v;
  os << "\n";
  for (const auto& a : pa.arrows)
    os << "arrow " << a.name << ": " << a.src << " -> " << a.tgt << "\n";
  for (const auto& r : pa.relations) {
    os << "relation ";
    for (size_t t = 0; t < r.size(); ++t) {
      if (t)
        os << (r[t].sign < 0 ? " - " : " + ");
      else if (r[t].sign < 0)
        os << "-";
      for (size_t k = 0; k < r[t].arrows.size(); ++k)
        os << (k ? "*" : "") << r[t].arrows[k];
    }
    os << "\n";
  }
  os << "maxlen " << pa.max_len << "\n";
  return os.str();
}

Algebra build_parsed(const ParsedAlgebra& pa, u32 p_override) {
  u32 p = p_override ? p_override : pa.p;
  Quiver q;
  q.vertices = pa.vertices;
  for (const auto& a : pa.arrows)
    q.arrows.push_back({a.name, q.vertex_index(a.src), q.vertex_index(a.tgt)});
  std::vector<Relation> rels;
  for (const auto& pr : pa.relations) {
    Relation r;
    for (const auto& t : pr) {
      RelTerm rt;
      rt.coeff = t.sign > 0 ? 1 : p - 1;
      for (const auto& nm : t.arrows) rt.arrows.push_back(q.arrow_index(nm));
      r.push_back(std::move(rt));
    }
    // parallel check happens again in build_algebra with locations lost, so
    // pre-check here for a friendlier message
    int src = -1, tgt = -1;
    for (const auto& t : r) {
      int s = q.arrows[t.arrows.front()].src;
      int e = q.arrows[t.arrows.back()].tgt;
      for (size_t k = 1; k < t.arrows.size(); ++k)
        if (q.arrows[t.arrows[k - 1]].tgt != q.arrows[t.arrows[k]].src)
          throw UsageError("relation path is not composable");
      if (src < 0) {
        src = s;
        tgt = e;
      } else if (s != src || e != tgt) {
        throw UsageError("relation mixes non-parallel paths");
      }
    }
    rels.push_back(std::move(r));
  }
  return build_algebra(q, rels, p, pa.max_len);
}

Module parse_module_text(const std::string& text, const Algebra& A) {
  std::vector<int> dims(A->n_vertices(), 0);
  std::vector<FpMat> act;
  for (int ai = 0; ai < (int)A->quiver.arrows.size(); ++ai)
    act.push_back(FpMat(A->p, 0, 0));
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool saw_dim = false;
  int cur_arrow = -1, cur_row = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    Cursor c{line, lineno};
    if (c.done()) continue;
    if (isdigit((unsigned char)c.peek())) {
      if (cur_arrow < 0) c.fail("matrix rows before a matrix header");
      const auto& ar = A->quiver.arrows[cur_arrow];
      if (cur_row >= dims[ar.tgt]) c.fail("too many matrix rows");
      for (int j = 0; j < dims[ar.src]; ++j)
        act[cur_arrow].at(cur_row, j) = (u32)(c.number() % A->p);
      if (!c.done()) c.fail("trailing entries in matrix row");
      ++cur_row;
      continue;
    }
    std::string kw = c.token();
    if (kw == "dim") {
      saw_dim = true;
      while (!c.done()) {
        std::string v = c.token();
        int vi = A->quiver.vertex_index(v);
        if (vi < 0) c.fail("unknown vertex '" + v + "'");
        c.expect('=');
        dims[vi] = (int)c.number();
      }
      for (int ai = 0; ai < (int)A->quiver.arrows.size(); ++ai) {
        const auto& ar = A->quiver.arrows[ai];
        act[ai] = FpMat(A->p, dims[ar.tgt], dims[ar.src]);
      }
    } else if (kw == "matrix") {
      if (!saw_dim) c.fail("matrix before dim line");
      std::string nm = c.token();
      cur_arrow = A->quiver.arrow_index(nm);
      if (cur_arrow < 0) c.fail("unknown arrow '" + nm + "'");
      cur_row = 0;
    } else {
      c.fail("unknown directive '" + kw + "'");
    }
  }
  if (!saw_dim) throw UsageError("module file has no dim line");
  return make_module(A, dims, act);
}

std::string print_module_text(const Module& M) {
  std::ostringstream os;
  os << "dim";
  for (int v = 0; v < M.A->n_vertices(); ++v)
    os << " " << M.A->quiver.vertices[v] << "=" << M.dims[v];
  os << "\n";
  for (int ai = 0; ai < (int)M.A->quiver.arrows.size(); ++ai) {
    const auto& b = M.act[ai];
    if (b.rows == 0 || b.cols == 0) continue;
    os << "matrix " << M.A->quiver.arrows[ai].name << "\n";
    for (int i = 0; i < b.rows; ++i) {
      for (int j = 0; j < b.cols; ++j) os << (j ? " " : "") << b.at(i, j);
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace qh
