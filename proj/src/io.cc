#include "conga/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace conga {

namespace {

struct Token {
  std::string_view text;
  size_t offset;
};

// Splits text into lines of whitespace-separated tokens with byte offsets.
class LineReader {
 public:
  explicit LineReader(const std::string& text) : text_(text) {}

  bool next(std::vector<Token>& tokens) {
    tokens.clear();
    if (pos_ >= text_.size()) return false;
    size_t end = text_.find('\n', pos_);
    if (end == std::string::npos) end = text_.size();
    line_start_ = pos_;
    size_t i = pos_;
    while (i < end) {
      while (i < end && (text_[i] == ' ' || text_[i] == '\t' || text_[i] == '\r')) ++i;
      size_t j = i;
      while (j < end && text_[j] != ' ' && text_[j] != '\t' && text_[j] != '\r') ++j;
      if (j > i) tokens.push_back({std::string_view(text_).substr(i, j - i), i});
      i = j;
    }
    pos_ = end + 1;
    return true;
  }
  size_t line_start() const { return line_start_; }
  size_t end_offset() const { return text_.size(); }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  size_t line_start_ = 0;
};

template <class T>
T parse_number(const Token& t, const char* what) {
  T x{};
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), x);
  if (ec != std::errc() || p != t.text.data() + t.text.size())
    throw ParseError(std::string("malformed ") + what + " '" + std::string(t.text) + "'",
                     t.offset);
  return x;
}

void expect(const std::vector<Token>& tok, size_t count, std::string_view keyword, size_t at) {
  if (tok.empty() || tok[0].text != keyword)
    throw ParseError("expected '" + std::string(keyword) + "' line", at);
  if (tok.size() != count)
    throw ParseError("'" + std::string(keyword) + "' line needs " + std::to_string(count - 1) +
                         " fields",
                     tok[0].offset);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, p);
}

Graph parse_graph(const std::string& text) {
  LineReader in(text);
  std::vector<Token> tok;
  if (!in.next(tok)) throw ParseError("empty graph file", 0);
  expect(tok, 4, "p", in.line_start());
  const long n = parse_number<long>(tok[1], "vertex count");
  const long m = parse_number<long>(tok[2], "edge count");
  const double W = parse_number<double>(tok[3], "capacity bound");
  if (n < 0 || n > (1L << 30)) throw ParseError("vertex count out of range", tok[1].offset);
  if (m < 0 || m > (1L << 30)) throw ParseError("edge count out of range", tok[2].offset);
  if (!(W >= 1.0) || !std::isfinite(W)) throw ParseError("W must be at least 1", tok[3].offset);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (in.next(tok)) {
    if (tok.empty() && in.line_start() + 1 >= in.end_offset()) break;  // final newline
    if (tok.empty()) throw ParseError("blank line", in.line_start());
    expect(tok, 4, "e", in.line_start());
    if (static_cast<long>(edges.size()) == m) throw ParseError("more edges than declared", tok[0].offset);
    long u = parse_number<long>(tok[1], "endpoint");
    long v = parse_number<long>(tok[2], "endpoint");
    double c = parse_number<double>(tok[3], "capacity");
    if (u < 0 || u >= n) throw ParseError("endpoint out of range", tok[1].offset);
    if (v < 0 || v >= n) throw ParseError("endpoint out of range", tok[2].offset);
    if (u == v) throw ParseError("self-loop", tok[1].offset);
    if (!(c >= 1.0 && c <= W)) throw ParseError("capacity outside [1, W]", tok[3].offset);
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), c});
  }
  if (static_cast<long>(edges.size()) != m)
    throw ParseError("fewer edges than declared", in.end_offset());
  return Graph(static_cast<int>(n), std::move(edges), W);
}

std::string format_graph(const Graph& g) {
  std::string out = "p " + std::to_string(g.n()) + " " + std::to_string(g.m()) + " " +
                    format_double(g.W()) + "\n";
  for (const Edge& e : g.edges())
    out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + " " + format_double(e.cap) +
           "\n";
  return out;
}

std::vector<Partition> parse_hierarchy(const std::string& text) {
  LineReader in(text);
  std::vector<Token> tok;
  if (!in.next(tok)) throw ParseError("empty hierarchy file", 0);
  expect(tok, 3, "hierarchy", in.line_start());
  const long n = parse_number<long>(tok[1], "vertex count");
  const long L = parse_number<long>(tok[2], "level count");
  if (n < 0 || n > (1L << 30)) throw ParseError("vertex count out of range", tok[1].offset);
  if (L < 1 || L > 4096) throw ParseError("level count out of range", tok[2].offset);
  std::vector<Partition> levels;
  std::vector<VertexSet> clusters;
  std::vector<char> seen;
  size_t level_at = 0;
  auto close_level = [&]() {
    try {
      levels.emplace_back(static_cast<int>(n), std::move(clusters));
    } catch (const InputError& e) {
      throw ParseError(std::string("invalid partition: ") + e.what(), level_at);
    }
    clusters.clear();
  };
  bool open = false;
  while (in.next(tok)) {
    if (tok.empty() && in.line_start() + 1 >= in.end_offset()) break;
    if (tok.empty()) throw ParseError("blank line", in.line_start());
    if (tok[0].text == "level") {
      expect(tok, 2, "level", in.line_start());
      long i = parse_number<long>(tok[1], "level index");
      if (open) close_level();
      if (i != static_cast<long>(levels.size()) + 1)
        throw ParseError("levels must be numbered 1, 2, ...", tok[1].offset);
      open = true;
      level_at = in.line_start();
      continue;
    }
    if (!open) throw ParseError("cluster before the first level line", in.line_start());
    std::vector<Vertex> members;
    for (const Token& t : tok) {
      long v = parse_number<long>(t, "vertex id");
      if (v < 0 || v >= n) throw ParseError("vertex id out of range", t.offset);
      members.push_back(static_cast<Vertex>(v));
    }
    VertexSet c(std::move(members));
    if (c.size() != static_cast<int>(tok.size()))
      throw ParseError("repeated vertex in a cluster", tok[0].offset);
    clusters.push_back(std::move(c));
  }
  if (open) close_level();
  if (static_cast<long>(levels.size()) != L)
    throw ParseError("level count does not match the header", in.end_offset());
  return levels;
}

std::string format_hierarchy(const std::vector<Partition>& levels) {
  std::string out = "hierarchy " + std::to_string(levels.empty() ? 0 : levels[0].n()) + " " +
                    std::to_string(levels.size()) + "\n";
  for (size_t i = 0; i < levels.size(); ++i) {
    out += "level " + std::to_string(i + 1) + "\n";
    const Partition canon = levels[i].canonical();
    for (const VertexSet& c : canon.clusters()) {
      for (int j = 0; j < c.size(); ++j) {
        if (j) out += ' ';
        out += std::to_string(c[j]);
      }
      out += '\n';
    }
  }
  return out;
}

CertificateFile certificate_of(const Hierarchy& h) {
  CertificateFile c;
  c.params = h.params;
  c.constants = h.constants;
  c.seed = h.seed;
  c.alpha = h.alpha();
  c.beta = h.beta();
  for (size_t i = 0; i < h.certificates.size(); ++i) {
    CertificateLevel lv;
    lv.level = static_cast<int>(i) + 2;
    lv.beta = h.certificates[i].beta;
    const EdgeFlow& f = h.certificates[i].level_flow;
    for (EdgeId e = 0; e < f.m(); ++e)
      if (f.value[e] != 0.0) lv.flow.push_back({e, f.value[e]});
    c.levels.push_back(std::move(lv));
  }
  return c;
}

std::string format_certificate(const CertificateFile& c) {
  std::string out = "certificate " + std::to_string(c.levels.size()) + "\n";
  out += "params " + format_double(c.params.log_nw) + " " + format_double(c.params.phi) + " " +
         format_double(c.params.kappa) + " " + std::to_string(c.params.T) + "\n";
  out += "constants " + format_double(c.constants.c_t) + " " + format_double(c.constants.c_phi) +
         " " + format_double(c.constants.c_kappa) + "\n";
  out += "seed " + std::to_string(c.seed) + "\n";
  out += "alpha " + format_double(c.alpha) + "\n";
  out += "beta " + format_double(c.beta) + "\n";
  for (const CertificateLevel& lv : c.levels) {
    out += "flow " + std::to_string(lv.level) + " " + format_double(lv.beta) + " " +
           std::to_string(lv.flow.size()) + "\n";
    for (const auto& [e, x] : lv.flow)
      out += "f " + std::to_string(e) + " " + format_double(x) + "\n";
  }
  return out;
}

CertificateFile parse_certificate(const std::string& text) {
  LineReader in(text);
  std::vector<Token> tok;
  CertificateFile c;
  auto line = [&](std::string_view keyword, size_t count) {
    if (!in.next(tok)) throw ParseError("truncated certificate", in.end_offset());
    expect(tok, count, keyword, in.line_start());
  };
  line("certificate", 2);
  const long levels = parse_number<long>(tok[1], "level count");
  if (levels < 0 || levels > 4096) throw ParseError("level count out of range", tok[1].offset);
  line("params", 5);
  c.params.log_nw = parse_number<double>(tok[1], "log");
  c.params.phi = parse_number<double>(tok[2], "phi");
  c.params.kappa = parse_number<double>(tok[3], "kappa");
  c.params.T = parse_number<int>(tok[4], "T");
  line("constants", 4);
  c.constants.c_t = parse_number<double>(tok[1], "c_t");
  c.constants.c_phi = parse_number<double>(tok[2], "c_phi");
  c.constants.c_kappa = parse_number<double>(tok[3], "c_kappa");
  line("seed", 2);
  c.seed = parse_number<uint64_t>(tok[1], "seed");
  line("alpha", 2);
  c.alpha = parse_number<double>(tok[1], "alpha");
  line("beta", 2);
  c.beta = parse_number<double>(tok[1], "beta");
  for (long i = 0; i < levels; ++i) {
    line("flow", 4);
    CertificateLevel lv;
    lv.level = parse_number<int>(tok[1], "level");
    lv.beta = parse_number<double>(tok[2], "beta");
    const long count = parse_number<long>(tok[3], "entry count");
    if (count < 0) throw ParseError("negative entry count", tok[3].offset);
    for (long j = 0; j < count; ++j) {
      line("f", 3);
      lv.flow.push_back({parse_number<EdgeId>(tok[1], "edge id"),
                         parse_number<double>(tok[2], "flow value")});
    }
    c.levels.push_back(std::move(lv));
  }
  while (in.next(tok))
    if (!tok.empty()) throw ParseError("trailing content", tok[0].offset);
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace conga
