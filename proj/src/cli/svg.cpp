// SPDX-License-Identifier: Apache-2.0
//
// fdprecode: full-rate full-diversity MIMO precoding with angle feedback
// Copyright (C) 2026 The fdprecode authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cli/config.hpp"
#include "fdprecode/error.hpp"
#include "fdprecode/statistics.hpp"

namespace fdprecode::cli
{

namespace
{
constexpr double width = 640.0;
constexpr double height = 440.0;
constexpr double left = 70.0;
constexpr double right = 20.0;
constexpr double top = 40.0;
constexpr double bottom = 50.0;

struct Frame
{
    double x0, x1, y0, y1; // data range

    double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
    double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

void header(std::ostringstream &os, const std::string &title)
{
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
       << "</text>\n";
}

void axes(std::ostringstream &os, const Frame &f, const std::string &xlabel, const std::string &ylabel)
{
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
       << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    os << "<text x=\"16\" y=\"" << (top + height - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (top + height - bottom) / 2 << ")\">" << ylabel << "</text>\n";
    for (int i = 0; i <= 5; ++i)
    {
        const double x = f.x0 + (f.x1 - f.x0) * i / 5.0;
        os << "<text x=\"" << f.px(x) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\">" << fmt(x)
           << "</text>\n";
    }
}
} // namespace

std::string cer_plot_svg(const CerCurve &curve, int diversity, const std::string &title)
{
    std::vector<const CerPoint *> pts;
    for (const auto &p : curve.points)
        if (p.errors > 0)
            pts.push_back(&p);

    Frame f{0.0, 1.0, -6.0, 0.0};
    if (!curve.points.empty())
    {
        f.x0 = curve.points.front().snr_db;
        f.x1 = curve.points.back().snr_db;
        if (f.x1 <= f.x0)
            f.x1 = f.x0 + 1.0;
    }
    if (!pts.empty())
    {
        double lo = 0.0;
        for (const auto *p : pts)
            lo = std::min(lo, std::log10(p->cer));
        f.y0 = std::floor(lo) - 1.0;
    }

    std::ostringstream os;
    header(os, title);
    axes(os, f, "SNR per receive antenna (dB)", "CER");
    for (int d = static_cast<int>(f.y0); d <= 0; ++d)
    {
        os << "<line x1=\"" << left << "\" x2=\"" << width - right << "\" y1=\"" << f.py(d) << "\" y2=\"" << f.py(d)
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << f.py(d) + 4 << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }

    // Guides: log10 CER falls by `diversity` per decade of SNR.
    if (!pts.empty() && diversity > 0)
    {
        for (const auto *anchor : {pts.front(), pts.back()})
        {
            const double xa = anchor->snr_db;
            const double ya = std::log10(anchor->cer);
            const auto y_of = [&](double x) { return ya - diversity * (x - xa) / 10.0; };
            const auto x_of = [&](double y) { return xa + (ya - y) * 10.0 / diversity; };
            const double xs = std::max(f.x0, x_of(0.0));
            const double xe = std::min(f.x1, x_of(f.y0));
            if (xs >= xe)
                continue;
            os << "<line x1=\"" << f.px(xs) << "\" y1=\"" << f.py(y_of(xs)) << "\" x2=\"" << f.px(xe) << "\" y2=\""
               << f.py(y_of(xe)) << "\" stroke=\"#999\" stroke-dasharray=\"6 4\"/>\n";
        }
        os << "<text x=\"" << width - right - 6 << "\" y=\"" << top + 16 << "\" text-anchor=\"end\" fill=\"#666\">"
           << "guides: slope -" << diversity << "</text>\n";
    }

    if (!pts.empty())
    {
        os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
        for (const auto *p : pts)
            os << f.px(p->snr_db) << ',' << f.py(std::log10(p->cer)) << ' ';
        os << "\"/>\n";
        for (const auto *p : pts)
            os << "<circle cx=\"" << f.px(p->snr_db) << "\" cy=\"" << f.py(std::log10(p->cer))
               << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string dmin_pdf_svg(const std::vector<HistogramBin> &bins, int dof, const std::string &title)
{
    Frame f{0.0, 1.0, 0.0, 1.0};
    if (!bins.empty())
    {
        f.x1 = bins.back().hi;
        double ymax = 0.0;
        for (const auto &b : bins)
            ymax = std::max(ymax, b.density);
        for (int i = 0; i <= 200; ++i)
            ymax = std::max(ymax, chi_square_pdf(f.x1 * i / 200.0, dof));
        f.y1 = ymax * 1.1;
    }

    std::ostringstream os;
    header(os, title);
    axes(os, f, "normalized d2min", "pdf");
    for (const auto &b : bins)
        os << "<rect x=\"" << f.px(b.lo) << "\" y=\"" << f.py(b.density) << "\" width=\"" << f.px(b.hi) - f.px(b.lo)
           << "\" height=\"" << f.py(0.0) - f.py(b.density) << "\" fill=\"#9ecae1\" stroke=\"#6baed6\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
    for (int i = 0; i <= 200; ++i)
    {
        const double x = f.x1 * i / 200.0;
        os << f.px(x) << ',' << f.py(chi_square_pdf(x, dof)) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << width - right - 6 << "\" y=\"" << top + 16 << "\" text-anchor=\"end\" fill=\"#d62728\">"
       << "chi-square, " << dof << " dof</text>\n";
    os << "</svg>\n";
    return os.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot write file: " + path.string());
    os << text;
    if (!os)
        throw IoError("error while writing file: " + path.string());
}

} // namespace fdprecode::cli
