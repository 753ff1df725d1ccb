#include "zevrpp/oracles/girder_tables.hpp"

#include <vector>

namespace zevrpp::oracles {

namespace {

struct Element {
  int n;
  Rational w, h, z;  // width, height, centroid height
  bool vertical;
};

struct Segment {
  Rational l, p, zi, zj;
};

Rational segment_flow(const Segment& s, Rational z_na, Rational I, Rational qi) {
  return -(s.p * s.l / (2 * I)) * (s.zi + s.zj - 2 * z_na) + qi;
}

}  // namespace

GirderRationals girder_from_tables(Rational B, Rational D, Rational p_td) {
  const Rational p_sp = B * p_td / (2 * D);
  const Rational p_bh = 2 * p_sp;
  const std::vector<Element> elems = {
      {1, B, 3 * p_td / 2, 0, false},         // bottom
      {1, B, p_td, D / 10, false},            // inner bottom
      {1, B, p_td, D / 2, false},             // ro-ro deck
      {1, B, p_td, D, false},                 // top deck
      {2, p_sp, D, D / 2, true},              // side plate
      {1, p_bh, D, D / 2, true},              // lumped bulkhead
  };
  Rational area = 0, moment = 0;
  for (auto& e : elems) {
    area += e.n * e.w * e.h;
    moment += e.n * e.w * e.h * e.z;
  }
  GirderRationals g;
  g.z_na = moment / area;
  g.inertia = 0;
  for (auto& e : elems) {
    Rational d = e.z - g.z_na;
    Rational own = e.vertical ? e.w * e.h * e.h * e.h / 12 : Rational(0);
    g.inertia += e.n * (own + e.w * e.h * d * d);
  }
  const Segment ab{B / 4, p_td, D, D}, bd{D / 2, p_sp, D, D / 2}, cd{B / 4, p_td, D / 2, D / 2},
      de{D / 10, p_sp, D / 2, 2 * D / 5};
  g.q_b = segment_flow(ab, g.z_na, g.inertia, 0);
  g.q_ad = segment_flow(bd, g.z_na, g.inertia, g.q_b);
  g.q_cd = segment_flow(cd, g.z_na, g.inertia, 0);
  g.q_e = segment_flow(de, g.z_na, g.inertia, g.q_ad + g.q_cd);
  return g;
}

}  // namespace zevrpp::oracles
