#pragma once

#include <algorithm>
#include <charconv>
#include <concepts>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "fcsim/errors.hpp"
#include "fcsim/tick.hpp"

namespace fcsim {
namespace detail {

// All numeric output goes through to_chars: locale-independent and
// round-trip exact, so equal runs produce byte-identical files. Whole
// values keep an explicit ".0" so a float column never reads as integer.
inline void append_number(std::string& out, double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  bool plain = true;
  for (const char* p = buf; p != res.ptr; ++p)
    if (*p == '.' || *p == 'e' || *p == 'n' || *p == 'i') plain = false;
  out.append(buf, res.ptr);
  if (plain) out.append(".0");
}

template <std::integral T>
inline void append_number(std::string& out, T value) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

} // namespace detail

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw io_error("write failed: " + path.string());
}

inline std::string spikes_csv(const std::vector<std::pair<tick_t, std::uint32_t>>& spikes) {
  std::string out = "tick,cell\n";
  for (const auto& [tick, cell] : spikes) {
    detail::append_number(out, tick);
    out.push_back(',');
    detail::append_number(out, cell);
    out.push_back('\n');
  }
  return out;
}

inline std::string vbody_csv(const std::vector<double>& body_mv) {
  std::string out = "tick,mv\n";
  for (std::size_t t = 0; t < body_mv.size(); ++t) {
    detail::append_number(out, static_cast<tick_t>(t));
    out.push_back(',');
    detail::append_number(out, body_mv[t]);
    out.push_back('\n');
  }
  return out;
}

struct memory_sample {
  tick_t tick;
  std::uint32_t input;
  double memory;
};

inline std::string memory_csv(const std::vector<memory_sample>& samples) {
  std::string out = "tick,input,memory\n";
  for (const memory_sample& s : samples) {
    detail::append_number(out, s.tick);
    out.push_back(',');
    detail::append_number(out, s.input);
    out.push_back(',');
    detail::append_number(out, s.memory);
    out.push_back('\n');
  }
  return out;
}

inline std::string isi_csv(const std::vector<tick_t>& intervals) {
  std::string out = "interval_ms\n";
  for (tick_t v : intervals) {
    detail::append_number(out, ticks_to_ms(v));
    out.push_back('\n');
  }
  return out;
}

inline std::string poincare_csv(const std::vector<std::pair<double, double>>& points) {
  std::string out = "interval_ms,next_interval_ms\n";
  for (const auto& [a, b] : points) {
    detail::append_number(out, a);
    out.push_back(',');
    detail::append_number(out, b);
    out.push_back('\n');
  }
  return out;
}

inline std::string rates_csv(const std::vector<double>& rates, tick_t window_ticks) {
  std::string out = "window_start_tick,rate_hz\n";
  for (std::size_t w = 0; w < rates.size(); ++w) {
    detail::append_number(out, static_cast<tick_t>(w) * window_ticks);
    out.push_back(',');
    detail::append_number(out, rates[w]);
    out.push_back('\n');
  }
  return out;
}

// Square first-return plot, one marker per point, axes in milliseconds.
// The viewport is fixed so plots from different runs can be compared
// side by side.
inline std::string poincare_svg(const std::vector<std::pair<double, double>>& points) {
  constexpr double size = 640.0;
  constexpr double margin = 60.0;
  constexpr double span = size - 2 * margin;

  double max_ms = 1.0;
  for (const auto& [a, b] : points) max_ms = std::max({max_ms, a, b});
  max_ms *= 1.05;

  const auto x_of = [&](double ms) { return margin + span * ms / max_ms; };
  const auto y_of = [&](double ms) { return size - margin - span * ms / max_ms; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n";
  out += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";

  // axes with the shared identity diagonal
  out += "<line x1=\"60\" y1=\"580\" x2=\"580\" y2=\"580\" stroke=\"black\"/>\n";
  out += "<line x1=\"60\" y1=\"60\" x2=\"60\" y2=\"580\" stroke=\"black\"/>\n";
  out += "<line x1=\"60\" y1=\"580\" x2=\"580\" y2=\"60\" stroke=\"#cccccc\" "
         "stroke-dasharray=\"4 4\"/>\n";
  out += "<text x=\"320\" y=\"620\" text-anchor=\"middle\" font-size=\"14\" "
         "font-family=\"sans-serif\">interval n (ms)</text>\n";
  out += "<text x=\"20\" y=\"320\" text-anchor=\"middle\" font-size=\"14\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 20 320)\">"
         "interval n+1 (ms)</text>\n";
  out += "<text x=\"56\" y=\"596\" text-anchor=\"end\" font-size=\"12\" "
         "font-family=\"sans-serif\">0</text>\n";
  out += "<text x=\"580\" y=\"596\" text-anchor=\"middle\" font-size=\"12\" "
         "font-family=\"sans-serif\">";
  detail::append_number(out, max_ms);
  out += "</text>\n";

  for (const auto& [a, b] : points) {
    out += "<circle cx=\"";
    detail::append_number(out, x_of(a));
    out += "\" cy=\"";
    detail::append_number(out, y_of(b));
    out += "\" r=\"3\" fill=\"#1f6fb2\" fill-opacity=\"0.7\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

} // namespace fcsim
