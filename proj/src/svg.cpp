#include "coconvex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace coconvex {

namespace {

struct Frame {
  double scale = 1.0;
  double x0 = 0.0;  // world coordinates of the viewport origin
  double y1 = 0.0;  // world y mapped to screen 0 (top edge)

  double sx(const Vec& w) const { return (w[0] - x0) * scale; }
  double sy(const Vec& w) const { return (y1 - w[1]) * scale; }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(4);
  // Avoid the "-0.0000" artifact.
  if (std::abs(v) < 5e-5) v = 0.0;
  s << v;
  return s.str();
}

// Convex polygon boundary order around the centroid.
std::vector<Vec> boundary_order(const std::vector<Vec>& pts) {
  Vec c = Vec::Zero(2);
  for (const Vec& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  std::vector<Vec> out = pts;
  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  return out;
}

std::string subpath(const std::vector<Vec>& pts, const Frame& f) {
  std::ostringstream s;
  for (size_t i = 0; i < pts.size(); ++i) {
    s << (i == 0 ? "M " : "L ") << fmt(f.sx(pts[i])) << " " << fmt(f.sy(pts[i])) << " ";
  }
  s << "Z";
  return s.str();
}

void emit_polygon(std::ostringstream& svg, const std::vector<Vec>& pts, const Frame& f,
                  const char* cls, const char* style) {
  svg << "  <path class=\"" << cls << "\" d=\"" << subpath(pts, f) << "\" " << style << "/>\n";
}

}  // namespace

std::string render_svg(const CCoconvexSet& a, int size_px) {
  if (a.cone().dim() != 2) {
    throw Error(ErrorCode::UnsupportedPlotDimension,
                "SVG rendering is limited to plane instances");
  }
  if (size_px < 64) {
    throw Error(ErrorCode::InvalidArgument, "viewport must be at least 64 px");
  }

  const std::vector<Vec> trunc = boundary_order(a.cone_truncation().vertices());
  const std::vector<Vec> body = boundary_order(a.body().vertices());

  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  for (const Vec& v : trunc) {
    xmin = std::min(xmin, v[0]);
    xmax = std::max(xmax, v[0]);
    ymin = std::min(ymin, v[1]);
    ymax = std::max(ymax, v[1]);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-6});
  const double margin = 0.12 * span;
  xmin -= margin;
  ymin -= margin;
  xmax += margin;
  ymax += margin;

  Frame f;
  f.scale = size_px / std::max(xmax - xmin, ymax - ymin);
  f.x0 = xmin;
  f.y1 = ymax;
  const double width = (xmax - xmin) * f.scale;
  const double height = (ymax - ymin) * f.scale;
  const double diag = std::hypot(width, height);

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " "
      << fmt(height) << "\">\n";

  // Truncated cone, then the coconvex region A as the even-odd difference
  // between the truncation and A_bullet.
  emit_polygon(svg, trunc, f, "cone", "fill=\"#f3f4f6\" stroke=\"#374151\" stroke-width=\"1\"");
  svg << "  <path class=\"region\" fill-rule=\"evenodd\" d=\"" << subpath(trunc, f) << " "
      << subpath(body, f) << "\" fill=\"#bfdbfe\" stroke=\"none\"/>\n";
  emit_polygon(svg, body, f, "body", "fill=\"#fde68a\" stroke=\"#92400e\" stroke-width=\"1.5\"");

  // Attained support lines {x . u = -hbar(u)} and the omega directions.
  for (int i = 0; i < a.omega().size(); ++i) {
    const Vec& u = a.omega()[i];
    const double h = a.support()[static_cast<size_t>(i)];
    const Vec foot = -h * u;
    Vec tangent(2);
    tangent << -u[1], u[0];
    const double reach = diag / f.scale;
    const Vec p1 = foot - reach * tangent;
    const Vec p2 = foot + reach * tangent;
    svg << "  <line class=\"support\" x1=\"" << fmt(f.sx(p1)) << "\" y1=\"" << fmt(f.sy(p1))
        << "\" x2=\"" << fmt(f.sx(p2)) << "\" y2=\"" << fmt(f.sy(p2))
        << "\" stroke=\"#dc2626\" stroke-width=\"1\" stroke-dasharray=\"6 3\"/>\n";

    const double arrow = 0.12 * (xmax - xmin);
    const Vec tip = foot + arrow * u;
    svg << "  <line class=\"normal\" x1=\"" << fmt(f.sx(foot)) << "\" y1=\"" << fmt(f.sy(foot))
        << "\" x2=\"" << fmt(f.sx(tip)) << "\" y2=\"" << fmt(f.sy(tip))
        << "\" stroke=\"#047857\" stroke-width=\"1.5\"/>\n";
    Vec head1 = tip - 0.25 * arrow * (u + 0.6 * tangent);
    Vec head2 = tip - 0.25 * arrow * (u - 0.6 * tangent);
    svg << "  <path class=\"normal\" d=\"M " << fmt(f.sx(head1)) << " " << fmt(f.sy(head1))
        << " L " << fmt(f.sx(tip)) << " " << fmt(f.sy(tip)) << " L " << fmt(f.sx(head2)) << " "
        << fmt(f.sy(head2)) << "\" fill=\"none\" stroke=\"#047857\" stroke-width=\"1.5\"/>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace coconvex
