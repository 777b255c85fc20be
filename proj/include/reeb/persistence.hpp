#pragma once

#include <iosfwd>
#include <vector>

#include "reeb/graph.hpp"

namespace reeb {

enum class PClass { Ord0, Ext0, Rel1, Ext1 };

const char* pclass_name(PClass c);

struct PPoint {
  Rat birth, death;
  PClass cls;

  bool operator==(const PPoint& o) const {
    return birth == o.birth && death == o.death && cls == o.cls;
  }
  bool operator<(const PPoint& o) const {
    if (cls != o.cls) return static_cast<int>(cls) < static_cast<int>(o.cls);
    if (birth != o.birth) return birth < o.birth;
    return death < o.death;
  }
};

struct Diagram {
  std::vector<PPoint> points;
  int component_count = 0;

  std::vector<PPoint> of_class(PClass c) const;
  void sort();
  bool operator==(const Diagram& o) const;
};

// Full extended persistence diagram of a generic canonical Reeb graph.
// Ord0/Rel1 by sweep union-find with the elder rule, Ext0 per component,
// Ext1 by iterative thinnest-cycle extraction.
Diagram extended_diagram(const ReebGraph& g);

// Same contract via boundary-matrix reduction over the coned filtration;
// exists for cross-validation only.
Diagram extended_diagram_oracle(const ReebGraph& g);

enum class BlockKind { ClosedClosed, ClosedOpen, OpenClosed, OpenOpen };

struct Block {
  Rat low, high;
  BlockKind kind;
  bool operator==(const Block& o) const {
    return low == o.low && high == o.high && kind == o.kind;
  }
  bool operator<(const Block& o) const {
    if (low != o.low) return low < o.low;
    if (high != o.high) return high < o.high;
    return static_cast<int>(kind) < static_cast<int>(o.kind);
  }
};

std::vector<Block> diagram_to_blocks(const Diagram& d);

Diagram parse_dgm(std::istream& in);
Diagram parse_dgm_file(const std::string& path);
void serialize_dgm(const Diagram& d, std::ostream& out);

}  // namespace reeb
