#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace ctsbench {

enum class SynthStrategy : std::uint8_t { Area0, Area1, Area2, Delay0, Delay1, Delay2, Delay3, Delay4 };

std::string_view to_string(SynthStrategy s);
// Accepts "AREA0".."AREA2", "DELAY0".."DELAY4"; throws SyntaxError otherwise.
SynthStrategy parse_synth_strategy(std::string_view text);
inline bool is_area(SynthStrategy s) { return s <= SynthStrategy::Area2; }

inline constexpr std::array<double, 4> kAspectRatios = {0.7, 1.0, 1.4, 2.0};

// Floorplan and placement randomization knobs.
struct PlacementKnobs {
  SynthStrategy synth_strategy = SynthStrategy::Area0;
  double aspect_ratio = 1.0;       // die height / die width
  int io_mode = 0;                 // 0 standard, 1 random pin
  double core_utilization = 50.0;  // percent, [40, 70]
  double target_density = 0.6;     // utilization / 100 + [0, 0.20]
  int time_driven = 0;
  int routability_driven = 0;

  // Throws InvariantError on any out-of-range value.
  void validate() const;
  bool operator==(const PlacementKnobs&) const = default;
};

// Clock-tree synthesis knobs; integers, microns except cluster_size (sinks).
struct CtsKnobs {
  int sink_max_dia = 50;      // [35, 70]
  int max_wire_length = 200;  // [130, 280]
  int cluster_size = 20;      // [12, 30]
  int buffer_distance = 100;  // [70, 150]

  void validate() const;
  bool operator==(const CtsKnobs&) const = default;
};

}  // namespace ctsbench
