// Copyright 2026 The rdmc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "rdmc/experiment.hpp"
#include "rdmc/io.hpp"

namespace rdmc {

HeatMapSheet emit_heatmap(const TwoRDM& gamma, const CriticalSubset& subset, bool split) {
  const int dim = gamma.space.size();
  if (gamma.elements.rows() != dim || gamma.elements.cols() != dim) {
    throw std::invalid_argument("2-RDM matrix does not match its pair space");
  }
  if (split && (subset.dim != dim || subset.basis != gamma.basis)) {
    throw std::invalid_argument("subset does not match the 2-RDM pair space or basis");
  }
  HeatMapSheet sheet{dim, split, std::vector<double>(static_cast<std::size_t>(dim) * dim)};
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double magnitude = std::abs(gamma.elements(r, c));
      bool shown = true;
      if (split) {
        const bool member = subset.contains({r, c});
        shown = (r >= c) ? member : !member;
      }
      sheet.values[static_cast<std::size_t>(r) * dim + c] = shown ? magnitude : 0.0;
    }
  }
  return sheet;
}

std::string heatmap_csv(const HeatMapSheet& sheet) {
  std::string out;
  for (int r = 0; r < sheet.dim; ++r) {
    for (int c = 0; c < sheet.dim; ++c) {
      if (c) out += ',';
      out += format_double17(sheet.at(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string heatmap_svg(const HeatMapSheet& sheet, const std::string& title) {
  constexpr int kCell = 12;
  constexpr int kMargin = 24;
  const int side = sheet.dim * kCell;
  const double max = sheet.values.empty()
                         ? 0.0
                         : *std::max_element(sheet.values.begin(), sheet.values.end());
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\">\n",
                side + 2 * kMargin, side + 2 * kMargin, side + 2 * kMargin,
                side + 2 * kMargin);
  out += buf;
  std::string escaped;
  for (char ch : title) {
    if (ch == '<') escaped += "&lt;";
    else if (ch == '>') escaped += "&gt;";
    else if (ch == '&') escaped += "&amp;";
    else escaped += ch;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%d\" y=\"16\" font-family=\"sans-serif\" font-size=\"12\">", kMargin);
  out += buf + escaped + "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"#ffffff\" "
                "stroke=\"#000000\"/>\n",
                kMargin, kMargin, side, side);
  out += buf;
  for (int r = 0; r < sheet.dim; ++r) {
    for (int c = 0; c < sheet.dim; ++c) {
      const double v = max > 0.0 ? sheet.at(r, c) / max : 0.0;
      if (v <= 0.0) continue;
      // White (0) to dark blue (sheet maximum).
      const int red = static_cast<int>(std::lround(255.0 * (1.0 - v)));
      const int green = static_cast<int>(std::lround(255.0 * (1.0 - 0.8 * v)));
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                    "fill=\"#%02x%02xff\"/>\n",
                    kMargin + c * kCell, kMargin + r * kCell, kCell, kCell, red, green);
      out += buf;
    }
  }
  if (sheet.split) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"#888888\"/>\n",
                  kMargin, kMargin, kMargin + side, kMargin + side);
    out += buf;
  }
  return out + "</svg>\n";
}

}  // namespace rdmc
