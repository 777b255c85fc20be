#pragma once

#include <string>

#include "reeb/fdd.hpp"
#include "reeb/graph.hpp"
#include "reeb/zigzag.hpp"

namespace reeb {
namespace fixtures {

// Fig. 4: genus-2 field graph, a_i = i for i = 1..10.
ReebGraph fig4();

// Fig. 8: graded vs ungraded gap; a2 = 2, a3 = 19/5, a4 = 4 on [1, 5].
std::pair<ReebGraph, ReebGraph> fig8_pair();

// Worked examples 1-4, instantiated at a_i = i (example 2 uses
// a2' = 9/5, a3' = 17/5).
std::pair<ReebGraph, ReebGraph> ex1_pair();
std::pair<ReebGraph, ReebGraph> ex2_pair();
std::pair<ReebGraph, ReebGraph> ex3_pair();
std::pair<ReebGraph, ReebGraph> ex4_pair();

MapCertificate ex1_cert();
MapCertificate ex2_cert();
MapCertificate ex3_cert();
MapCertificate ex4_cert();

ZigzagCertificate ex1_zz();
ZigzagCertificate ex2_zz();
ZigzagCertificate ex3_zz();
ZigzagCertificate ex4_zz();

EditSequence ex1_seq();
EditSequence ex2_seq();

// Chained micro-insertion regression: relabeling a tip by 3 through small
// steps; the pullback cost must still be 3.
std::pair<std::pair<ReebGraph, ReebGraph>, ZigzagCertificate> remark_bug();

// Shared 1-complex used by the stability and landscape property runs.
ScalarField stability_base();

// Writes the whole corpus (graphs, diagrams, certificates, sequences,
// manifest) under dir. Returns the number of files written.
int emit(const std::string& dir);

}  // namespace fixtures
}  // namespace reeb
