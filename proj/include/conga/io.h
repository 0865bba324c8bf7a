#ifndef CONGA_IO_H_
#define CONGA_IO_H_

#include <string>
#include <vector>

#include "conga/graph.h"
#include "conga/partitioner.h"

namespace conga {

// Text graph: "p n m W", then m lines "e u v cap". Throws ParseError.
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

// "hierarchy n L", then per level "level i" and one line of ids per cluster.
std::vector<Partition> parse_hierarchy(const std::string& text);
std::string format_hierarchy(const std::vector<Partition>& levels);

struct CertificateLevel {
  int level = 0;  // index of the partition this flow builds
  double beta = 0.0;
  std::vector<std::pair<EdgeId, double>> flow;  // nonzero entries only
};

struct CertificateFile {
  LevelParams params;
  Constants constants;
  uint64_t seed = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<CertificateLevel> levels;
};

CertificateFile certificate_of(const Hierarchy& h);
std::string format_certificate(const CertificateFile& c);
CertificateFile parse_certificate(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace conga

#endif  // CONGA_IO_H_
