#include "psds/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace psds {

const char* to_string(SegmentMode m) {
  switch (m) {
    case SegmentMode::FreeMinus: return "free-minus";
    case SegmentMode::FreePlus: return "free-plus";
    case SegmentMode::Sliding: return "sliding";
    case SegmentMode::SweptBoundary: return "swept-boundary";
  }
  return "unknown";
}

double Trajectory::max_h(const SwitchingSurface& surface, double eps) const {
  double worst = -1e300;
  for (const auto& seg : segments) {
    for (const auto& s : seg.samples) {
      worst = std::max(worst, surface.h(s.state, eps));
    }
  }
  return worst;
}

Vec2 Trajectory::interpolate(double t) const {
  const TrajectorySample* prev = nullptr;
  for (const auto& seg : segments) {
    for (const auto& s : seg.samples) {
      if (s.t >= t) {
        if (!prev || s.t == prev->t) return s.state;
        const double w = (t - prev->t) / (s.t - prev->t);
        return prev->state + (s.state - prev->state) * w;
      }
      prev = &s;
    }
  }
  return prev ? prev->state : Vec2{};
}

namespace {

void format_number(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

void write_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,x,y,mode,event_kind\n";
  std::size_t ev = 0;
  for (const auto& seg : traj.segments) {
    for (const auto& s : seg.samples) {
      format_number(os, s.t);
      os << ',';
      format_number(os, s.state.x);
      os << ',';
      format_number(os, s.state.y);
      os << ',' << to_string(seg.mode) << ',';
      while (ev < traj.events.size() && traj.events[ev].time < s.t - 1e-15) ++ev;
      if (ev < traj.events.size() &&
          std::fabs(traj.events[ev].time - s.t) <= 1e-12 * std::max(1.0, std::fabs(s.t)) &&
          (traj.events[ev].state - s.state).norm() <= 1e-9) {
        os << to_string(traj.events[ev].kind);
        ++ev;
      }
      os << '\n';
    }
  }
}

std::string to_csv(const Trajectory& traj) {
  std::ostringstream os;
  write_csv(traj, os);
  return os.str();
}

}  // namespace psds
