/**
 * @file pwa.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/pwa.hpp"

#include <cmath>
#include <stdexcept>

namespace momplan {

namespace {

std::vector<PwaPiece> chordPieces(double (*fn)(double), int count, double lo,
                                  double hi) {
  std::vector<PwaPiece> pieces;
  pieces.reserve(static_cast<size_t>(count));
  const double width = (hi - lo) / count;
  for (int u = 0; u < count; ++u) {
    PwaPiece piece;
    piece.theta_lo = lo + u * width;
    piece.theta_hi = u + 1 == count ? hi : lo + (u + 1) * width;
    const double fa = fn(piece.theta_lo), fb = fn(piece.theta_hi);
    piece.slope = (fb - fa) / (piece.theta_hi - piece.theta_lo);
    piece.intercept = fa - piece.slope * piece.theta_lo;
    double err = 0.0;
    for (int k = 0; k <= 2000; ++k) {
      const double theta =
          piece.theta_lo + (piece.theta_hi - piece.theta_lo) * k / 2000.0;
      err = std::max(err, std::abs(fn(theta) - piece.at(theta)));
    }
    piece.max_error = err;
    pieces.push_back(piece);
  }
  return pieces;
}

int pieceIndex(const std::vector<PwaPiece>& pieces, double theta) {
  for (size_t u = 0; u < pieces.size(); ++u)
    if (pieces[u].contains(theta)) return static_cast<int>(u);
  return theta < pieces.front().theta_lo ? 0
                                         : static_cast<int>(pieces.size()) - 1;
}

}  // namespace

double PwaApprox::sinAt(double theta) const {
  return sin_pieces[static_cast<size_t>(sinPieceIndex(theta))].at(theta);
}

double PwaApprox::cosAt(double theta) const {
  return cos_pieces[static_cast<size_t>(cosPieceIndex(theta))].at(theta);
}

int PwaApprox::sinPieceIndex(double theta) const {
  return pieceIndex(sin_pieces, theta);
}

int PwaApprox::cosPieceIndex(double theta) const {
  return pieceIndex(cos_pieces, theta);
}

double PwaApprox::maxSinError() const {
  double e = 0.0;
  for (const auto& piece : sin_pieces) e = std::max(e, piece.max_error);
  return e;
}

double PwaApprox::maxCosError() const {
  double e = 0.0;
  for (const auto& piece : cos_pieces) e = std::max(e, piece.max_error);
  return e;
}

PwaApprox buildPwaSincos(int num_sin, int num_cos, double theta_min,
                         double theta_max) {
  if (num_sin < 1 || num_cos < 1)
    throw std::invalid_argument("buildPwaSincos: piece counts must be >= 1");
  if (!(theta_min < theta_max))
    throw std::invalid_argument("buildPwaSincos: empty theta range");
  if (theta_min < -M_PI - 1e-12 || theta_max > M_PI + 1e-12)
    throw std::invalid_argument("buildPwaSincos: range outside [-pi, pi]");
  PwaApprox approx;
  approx.theta_min = theta_min;
  approx.theta_max = theta_max;
  approx.sin_pieces = chordPieces(std::sin, num_sin, theta_min, theta_max);
  approx.cos_pieces = chordPieces(std::cos, num_cos, theta_min, theta_max);
  return approx;
}

}  // namespace momplan
