#pragma once

// Shared baseline configuration: n = 3, Gaussian smearing sigma = 1, Gaussian
// switching T = 1 centered at 0, gap Omega = 1, separation d = 2,
// coupling lambda = 0.01.

#include "udw/detectors.hpp"
#include "udw/field_state.hpp"
#include "udw/quadrature.hpp"

namespace fixtures {

using namespace udw;

inline DetectorSpec detector(char label, Real x0, Real coupling = 0.01, int n = 3) {
  DetectorSpec det;
  det.label = label;
  det.gap = 1.0;
  det.position = Vec::Zero(n);
  det.position(0) = x0;
  det.coupling = coupling;
  det.smearing = SmearingProfile::gaussian(1.0);
  det.switching = SwitchingProfile::gaussian(1.0, 0.0);
  return det;
}

inline CoherentAmplitude packet_amplitude(int n = 3, Complex weight = Complex{2.0, 0.0},
                                          Real center0 = 1.0, Real width = 0.5) {
  CoherentAmplitude amp;
  amp.dimension = n;
  GaussianPacket p;
  p.weight = weight;
  p.center = Vec::Zero(n);
  p.center(0) = center0;
  p.width = width;
  amp.packets.push_back(p);
  return amp;
}

inline CoherentAmplitude two_packet_amplitude(int n = 3) {
  CoherentAmplitude amp;
  amp.dimension = n;
  GaussianPacket p1;
  p1.weight = Complex{1.6, 0.9};
  p1.center = Vec::Zero(n);
  p1.center(0) = 1.3;
  if (n > 1) p1.center(1) = 0.4;
  p1.width = 0.6;
  GaussianPacket p2;
  p2.weight = Complex{-1.1, 0.4};
  p2.center = Vec::Zero(n);
  p2.center(0) = 0.7;
  if (n > 2) p2.center(2) = -0.6;
  p2.width = 0.45;
  amp.packets.push_back(p1);
  amp.packets.push_back(p2);
  return amp;
}

inline QuadratureConfig quad(Real tol = 1e-9) {
  QuadratureConfig cfg;
  cfg.abs_tol = tol;
  cfg.rel_tol = tol;
  return cfg;
}

}  // namespace fixtures
