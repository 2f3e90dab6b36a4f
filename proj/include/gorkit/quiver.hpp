// Quiver-with-relations presentations. Paths are written in traversal order
// (first arrow first); the algebra product p*q traverses q, then p, so path
// actions compose like linear maps.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gorkit {

struct Arrow {
  std::string name;
  std::string from;
  std::string to;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& label) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == label) return int(i);
    return -1;
  }

  int arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return int(i);
    return -1;
  }

  void validate() const {
    if (vertices.empty()) throw std::invalid_argument("empty quiver");
    std::map<std::string, int> seen;
    for (const auto& v : vertices)
      if (++seen[v] > 1) throw std::invalid_argument("duplicate vertex label: " + v);
    std::map<std::string, int> aseen;
    for (const auto& a : arrows) {
      if (++aseen[a.name] > 1) throw std::invalid_argument("duplicate arrow name: " + a.name);
      if (vertex_index(a.from) < 0) throw std::invalid_argument("arrow " + a.name + " has unknown source " + a.from);
      if (vertex_index(a.to) < 0) throw std::invalid_argument("arrow " + a.name + " has unknown target " + a.to);
    }
  }
};

struct RelationTerm {
  std::int64_t coef = 1;
  std::vector<std::string> path;  // arrow names, traversal order
};

struct Relation {
  std::vector<RelationTerm> terms;
};

struct AlgebraPresentation {
  Quiver quiver;
  std::vector<Relation> relations;
  std::size_t nilpotency_bound = 2;  // compiled algebra is kQ/(I + J^N)
};

}  // namespace gorkit
