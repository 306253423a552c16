#include <gtest/gtest.h>

#include "advq/errors.hpp"
#include "advq/resources.hpp"

using namespace advq;

TEST(Resources, ElementTextRoundTrip) {
  for (const auto& e : {CircuitElement::rotation(PauliString("XYZI")), CircuitElement::ry(2),
                        CircuitElement::cx(0, 3)}) {
    EXPECT_EQ(CircuitElement::parse(e.str()).str(), e.str());
  }
  EXPECT_EQ(CircuitElement::cx(0, 1).str(), "CX 0 1");
  EXPECT_THROW(CircuitElement::parse("CZ 0 1"), Error);
}

TEST(Resources, SingleQubitRotations) {
  const auto z = count_pauli_rotation(PauliString("Z"), Connectivity::all_to_all);
  EXPECT_EQ(z.rz, 1);
  EXPECT_EQ(z.total(), 1);
  // Y: SX in, RZ, SX X out.
  const auto y = count_pauli_rotation(PauliString("Y"), Connectivity::all_to_all);
  EXPECT_EQ(y.sx, 2);
  EXPECT_EQ(y.x, 1);
  EXPECT_EQ(y.rz, 1);
  // X: H in and out, each RZ SX RZ.
  const auto x = count_pauli_rotation(PauliString("X"), Connectivity::all_to_all);
  EXPECT_EQ(x.rz, 5);
  EXPECT_EQ(x.sx, 2);
}

TEST(Resources, LadderTwoQubitCount) {
  const auto zz = count_pauli_rotation(PauliString("ZIZ"), Connectivity::all_to_all);
  EXPECT_EQ(zz.cz, 2);
  EXPECT_EQ(zz.two_qubit_count, 2);
  const auto lin = count_pauli_rotation(PauliString("ZIZ"), Connectivity::linear_chain);
  EXPECT_EQ(lin.cz, 2 + 2 * 2 * 3);
  EXPECT_GT(lin.total(), zz.total());
}

TEST(Resources, RyAndCxRules) {
  const auto ry = count_run({CircuitElement::ry(0)}, 1, Connectivity::linear_chain);
  EXPECT_EQ(ry, (ResourceCount{1, 2, 1, 0, 4, 0}));
  const auto cx = count_run({CircuitElement::cx(0, 1)}, 2, Connectivity::linear_chain);
  EXPECT_EQ(cx.cz, 1);
  EXPECT_EQ(cx.rz, 4);
  EXPECT_EQ(cx.sx, 2);
  EXPECT_EQ(cx.total(), 7);
  EXPECT_EQ(cx.depth, 7);
}

TEST(Resources, DepthOverlapsDisjointQubits) {
  const std::vector<CircuitElement> t = {CircuitElement::ry(0), CircuitElement::ry(1)};
  EXPECT_EQ(count_run(t, 2, Connectivity::all_to_all).depth, 4);
  EXPECT_EQ(structural_depth(t, 2), 1);
  const std::vector<CircuitElement> chain = {CircuitElement::ry(0), CircuitElement::cx(0, 1),
                                             CircuitElement::ry(1)};
  EXPECT_EQ(structural_depth(chain, 2), 3);
}

TEST(Resources, RejectsOutOfRange) {
  EXPECT_THROW(count_run({CircuitElement::cx(0, 5)}, 2, Connectivity::all_to_all), Error);
  EXPECT_THROW(count_run({CircuitElement::cx(1, 1)}, 2, Connectivity::all_to_all), Error);
  EXPECT_THROW(connectivity_from_string("ring"), ConfigError);
}
