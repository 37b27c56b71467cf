#include "dmfsense/hexarray.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>

namespace dmfsense {
namespace {

constexpr std::array<std::pair<int, int>, 6> kAxialOffsets = {{
    {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1},
}};

}  // namespace

char zone_letter(Zone zone) {
  switch (zone) {
    case Zone::a: return 'A';
    case Zone::b: return 'B';
    case Zone::c: return 'C';
  }
  throw std::invalid_argument("bad zone");
}

Zone zone_from_letter(char letter) {
  switch (letter) {
    case 'A': case 'a': return Zone::a;
    case 'B': case 'b': return Zone::b;
    case 'C': case 'c': return Zone::c;
    default:
      throw std::invalid_argument(std::string("unknown zone \"") + letter + "\"");
  }
}

HexArray::HexArray(int side) : side_(side) {
  if (side < 1) throw std::invalid_argument("hex array side must be >= 1");

  const int r_max = radius();
  const int span = 2 * r_max + 1;
  index_by_qr_.assign(static_cast<std::size_t>(span) * span, -1);

  // Row-major axial order: r ascending, q ascending within the row.
  for (int r = -r_max; r <= r_max; ++r) {
    const int q_lo = std::max(-r_max, -r_max - r);
    const int q_hi = std::min(r_max, r_max - r);
    for (int q = q_lo; q <= q_hi; ++q) {
      ElectrodeAddress address{q, r, static_cast<int>(electrodes_.size())};
      index_by_qr_[static_cast<std::size_t>((r + r_max) * span + (q + r_max))] =
          address.linear_index;
      electrodes_.push_back(address);
    }
  }
}

bool HexArray::contains(int q, int r) const {
  const int r_max = radius();
  return std::abs(q) <= r_max && std::abs(r) <= r_max && std::abs(q + r) <= r_max;
}

const ElectrodeAddress& HexArray::at(int linear_index) const {
  if (linear_index < 0 || linear_index >= size())
    throw std::out_of_range("linear index " + std::to_string(linear_index) +
                            " outside array of " + std::to_string(size()));
  return electrodes_[static_cast<std::size_t>(linear_index)];
}

const ElectrodeAddress& HexArray::at(int q, int r) const {
  if (!contains(q, r))
    throw std::out_of_range("electrode (" + std::to_string(q) + ", " +
                            std::to_string(r) + ") outside array");
  const int r_max = radius();
  const int span = 2 * r_max + 1;
  const int index =
      index_by_qr_[static_cast<std::size_t>((r + r_max) * span + (q + r_max))];
  return electrodes_[static_cast<std::size_t>(index)];
}

std::vector<ElectrodeAddress> HexArray::neighbors(
    const ElectrodeAddress& address) const {
  if (!contains(address.q, address.r))
    throw std::out_of_range("electrode (" + std::to_string(address.q) + ", " +
                            std::to_string(address.r) + ") outside array");
  std::vector<ElectrodeAddress> result;
  result.reserve(6);
  for (const auto& [dq, dr] : kAxialOffsets) {
    const int q = address.q + dq;
    const int r = address.r + dr;
    if (contains(q, r)) result.push_back(at(q, r));
  }
  return result;
}

ZoneAssignment HexArray::default_zone_of(int linear_index) const {
  // Contiguous blocks, remainder to the front: 169 -> 57/56/56.
  const int count = size();
  const int base = count / kZoneCount;
  const int remainder = count % kZoneCount;

  int start = 0;
  for (int zone = 0; zone < kZoneCount; ++zone) {
    const int block = base + (zone < remainder ? 1 : 0);
    if (linear_index < start + block) {
      if (block > kZonePinCapacity)
        throw std::domain_error("zone block of " + std::to_string(block) +
                                " exceeds the " +
                                std::to_string(kZonePinCapacity) +
                                "-pin connector capacity");
      return {static_cast<Zone>(zone), linear_index - start};
    }
    start += block;
  }
  throw std::out_of_range("linear index outside zone map");
}

ZoneAssignment HexArray::zone_of(const ElectrodeAddress& address) const {
  if (address.linear_index < 0 || address.linear_index >= size())
    throw std::out_of_range("electrode outside array");
  if (routing_) return (*routing_)[static_cast<std::size_t>(address.linear_index)];
  return default_zone_of(address.linear_index);
}

void HexArray::set_routing(std::vector<ZoneAssignment> table) {
  if (static_cast<int>(table.size()) != size())
    throw std::invalid_argument("routing table must assign all " +
                                std::to_string(size()) + " electrodes");
  std::array<std::array<bool, kZonePinCapacity>, kZoneCount> used{};
  for (const ZoneAssignment& assignment : table) {
    if (assignment.pin < 0 || assignment.pin >= kZonePinCapacity)
      throw std::invalid_argument("routing pin " +
                                  std::to_string(assignment.pin) +
                                  " outside 0.." +
                                  std::to_string(kZonePinCapacity - 1));
    auto& pin_used = used[static_cast<std::size_t>(assignment.zone)]
                         [static_cast<std::size_t>(assignment.pin)];
    if (pin_used)
      throw std::invalid_argument(
          std::string("routing pin collision on zone ") +
          zone_letter(assignment.zone) + " pin " +
          std::to_string(assignment.pin));
    pin_used = true;
  }
  routing_ = std::move(table);
}

std::vector<int> HexArray::scan_order() const {
  std::vector<int> order(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [this](int a, int b) {
    const ZoneAssignment za = zone_of(at(a));
    const ZoneAssignment zb = zone_of(at(b));
    if (za.zone != zb.zone) return za.zone < zb.zone;
    return za.pin < zb.pin;
  });
  return order;
}

int HexArray::hex_distance(const ElectrodeAddress& a, const ElectrodeAddress& b) {
  const int dq = a.q - b.q;
  const int dr = a.r - b.r;
  return (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2;
}

}  // namespace dmfsense
