#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dmfsense {

/// Axial hex coordinates plus the row-major linear index used for
/// addressing. A centered hexagon of side n keeps |q| <= n-1, |r| <= n-1,
/// |q + r| <= n-1 and holds 3n(n-1)+1 electrodes.
struct ElectrodeAddress {
  int q = 0;
  int r = 0;
  int linear_index = -1;

  friend bool operator==(const ElectrodeAddress& a, const ElectrodeAddress& b) {
    return a.q == b.q && a.r == b.r;
  }
};

enum class Zone { a, b, c };

char zone_letter(Zone zone);
Zone zone_from_letter(char letter);

/// Which multiplexer zone and connector pin serve an electrode. Three
/// 60-pin connectors carry 180 channels; a side-8 array uses 169 of them.
struct ZoneAssignment {
  Zone zone = Zone::a;
  int pin = 0;
};

class HexArray {
 public:
  static constexpr int kZonePinCapacity = 60;
  static constexpr int kZoneCount = 3;

  explicit HexArray(int side = 8);

  int side() const { return side_; }
  int size() const { return static_cast<int>(electrodes_.size()); }

  const std::vector<ElectrodeAddress>& electrodes() const { return electrodes_; }
  bool contains(int q, int r) const;
  const ElectrodeAddress& at(int linear_index) const;
  const ElectrodeAddress& at(int q, int r) const;

  /// The <= 6 axial neighbors inside the hexagon.
  std::vector<ElectrodeAddress> neighbors(const ElectrodeAddress& address) const;

  ZoneAssignment zone_of(const ElectrodeAddress& address) const;

  /// Replace the default contiguous zone split with an explicit routing
  /// table (one entry per linear index). Pins must be unique per zone and
  /// below the connector capacity.
  void set_routing(std::vector<ZoneAssignment> table);
  bool has_routing_override() const { return routing_.has_value(); }

  /// Linear indices sorted by (zone, pin) — the order channels are scanned.
  std::vector<int> scan_order() const;

  static int hex_distance(const ElectrodeAddress& a, const ElectrodeAddress& b);

 private:
  int radius() const { return side_ - 1; }
  ZoneAssignment default_zone_of(int linear_index) const;

  int side_;
  std::vector<ElectrodeAddress> electrodes_;
  std::vector<int> index_by_qr_;  // dense (q, r) -> linear index, -1 outside
  std::optional<std::vector<ZoneAssignment>> routing_;
};

}  // namespace dmfsense
