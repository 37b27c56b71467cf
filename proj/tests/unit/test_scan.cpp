#include <doctest.h>

#include <cmath>
#include <set>

#include "dmfsense/errors.hpp"
#include "dmfsense/scan.hpp"

#include "../support/fixtures.hpp"

using namespace dmfsense;

namespace {

MovementScript single_droplet_script() {
  MovementScript script;
  DropletPath droplet;
  droplet.id = 0;
  droplet.liquid = "water";
  for (int q = -3; q <= 2; ++q) droplet.waypoints.push_back({q, 0, -1});
  script.droplets.push_back(droplet);
  return script;
}

MovementScript three_droplet_script() {
  MovementScript script;
  const int rows[3] = {-3, 0, 3};
  const int starts[3] = {-2, -5, -2};
  for (int d = 0; d < 3; ++d) {
    DropletPath droplet;
    droplet.id = d;
    droplet.liquid = "water";
    for (int step = 0; step < 6; ++step)
      droplet.waypoints.push_back({starts[d] + step, rows[d], -1});
    script.droplets.push_back(droplet);
  }
  return script;
}

}  // namespace

TEST_CASE("scan_all classifies a uniform medium array as idle") {
  const ScanContext context = fixtures::default_context(42);
  const StatusMap map =
      scan_all(context, fixtures::all_medium(context.array), FaultSpec{}, 0);

  CHECK(map.readings.size() == 169);
  CHECK(map.count(ChannelState::connected_idle) == 169);
  CHECK(map.count(ChannelState::bad_connection) == 0);
  CHECK(map.count(ChannelState::connected_droplet) == 0);
}

TEST_CASE("scan_all covers every electrode exactly once") {
  const ScanContext context = fixtures::default_context(1);
  const StatusMap map =
      scan_all(context, fixtures::all_medium(context.array), FaultSpec{}, 0);
  std::set<int> seen;
  for (const ChannelReading& reading : map.readings) {
    CHECK(reading.linear_index >= 0);
    CHECK(seen.insert(reading.linear_index).second);
  }
  CHECK(seen.size() == 169);
}

TEST_CASE("zone cuts force exactly their electrodes to bad connection") {
  const ScanContext context = fixtures::default_context(42);
  FaultSpec faults;
  faults.zone_cuts = {Zone::b, Zone::c};
  const StatusMap map =
      scan_all(context, fixtures::all_medium(context.array), faults, 0);

  for (const ChannelReading& reading : map.readings) {
    const Zone zone = reading.zone.zone;
    if (zone == Zone::a)
      CHECK(reading.state == ChannelState::connected_idle);
    else
      CHECK(reading.state == ChannelState::bad_connection);
  }
  CHECK(map.count(ChannelState::bad_connection) == 56 + 56);
}

TEST_CASE("cutting all zones blanks the whole array") {
  const ScanContext context = fixtures::default_context(42);
  FaultSpec faults;
  faults.zone_cuts = {Zone::a, Zone::b, Zone::c};
  const StatusMap map =
      scan_all(context, fixtures::all_medium(context.array), faults, 0);
  CHECK(map.count(ChannelState::bad_connection) == 169);
}

TEST_CASE("fault dominance: a faulted channel never rises above bad") {
  ScanContext context = fixtures::default_context(5);
  FaultSpec faults;
  faults.open_channels = {40, 90, 140};

  std::vector<ChannelOccupancy> occupancies =
      fixtures::all_medium(context.array);
  for (int channel : faults.open_channels)
    occupancies[(std::size_t)channel] = ChannelOccupancy::make_droplet("water");

  const StatusMap map = scan_all(context, occupancies, faults, 0);
  for (int channel : faults.open_channels)
    CHECK(map.readings[(std::size_t)channel].state ==
          ChannelState::bad_connection);
  CHECK(map.count(ChannelState::bad_connection) == 3);
}

TEST_CASE("scan_all rejects uncalibrated thresholds and bad occupancy") {
  ScanContext context = fixtures::default_context(1);
  std::vector<ChannelOccupancy> occupancies =
      fixtures::all_medium(context.array);

  ScanContext uncalibrated = context;
  uncalibrated.thresholds = Thresholds{};
  CHECK_THROWS_AS(scan_all(uncalibrated, occupancies, FaultSpec{}, 0),
                  std::invalid_argument);

  occupancies.pop_back();
  CHECK_THROWS_AS(scan_all(context, occupancies, FaultSpec{}, 0),
                  std::invalid_argument);
}

TEST_CASE("timing ledger") {
  const AdcConfig adc{};
  CHECK(per_channel_elapsed(adc) == doctest::Approx(1.78e-3).epsilon(1e-12));
  CHECK(per_channel_elapsed(adc) < 2e-3);
  CHECK(scan_elapsed_model(adc) == doctest::Approx(0.30082).epsilon(1e-12));

  AdcConfig doubled = adc;
  doubled.sample_count = 512;
  CHECK(per_channel_elapsed(doubled) ==
        doctest::Approx(2.56e-3 + 0.5e-3).epsilon(1e-12));

  const ScanContext context = fixtures::default_context(3);
  const StatusMap map =
      scan_all(context, fixtures::all_medium(context.array), FaultSpec{}, 0);
  double total = 0.0;
  for (const ChannelReading& reading : map.readings) total += reading.elapsed_s;
  CHECK(map.scan_elapsed_s == doctest::Approx(total).epsilon(1e-15));
  CHECK(map.scan_elapsed_s == doctest::Approx(0.30082).epsilon(1e-9));
}

TEST_CASE("scan order does not change classifications") {
  ScanContext forward = fixtures::default_context(42);
  ScanContext reversed = fixtures::default_context(42);
  std::vector<ZoneAssignment> table;
  for (int i = reversed.array.size() - 1; i >= 0; --i)
    table.push_back(forward.array.zone_of(forward.array.at(i)));
  reversed.array.set_routing(table);

  std::vector<ChannelOccupancy> occupancies =
      fixtures::all_medium(forward.array);
  occupancies[84] = ChannelOccupancy::make_droplet("water");

  const StatusMap a = scan_all(forward, occupancies, FaultSpec{}, 0);
  const StatusMap b = scan_all(reversed, occupancies, FaultSpec{}, 0);
  for (std::size_t i = 0; i < a.readings.size(); ++i) {
    CHECK(a.readings[i].state == b.readings[i].state);
    CHECK(a.readings[i].magnitude == b.readings[i].magnitude);
  }
}

TEST_CASE("empty script still scans the base occupancy") {
  const ScanContext context = fixtures::default_context(9);
  const MovementScript script;
  CHECK(script.tick_count() == 1);
  const ScanOutcome outcome =
      step_scenario(context, script, FaultSpec{}, "silicone_oil", 0);
  CHECK(outcome.map.count(ChannelState::connected_idle) == 169);
  for (const ChannelOccupancy& occupancy : outcome.occupancies)
    CHECK(occupancy.kind == ChannelOccupancy::Kind::medium);
}

TEST_CASE("single droplet path produces one droplet per tick at the script") {
  const ScanContext context = fixtures::default_context(42);
  const MovementScript script = single_droplet_script();
  CHECK(script.tick_count() == 6);

  for (int tick = 0; tick < script.tick_count(); ++tick) {
    const ScanOutcome outcome =
        step_scenario(context, script, FaultSpec{}, "silicone_oil", tick);
    CHECK(outcome.map.count(ChannelState::connected_droplet) == 1);
    const int expected_index =
        context.array.at(-3 + tick, 0).linear_index;
    CHECK(outcome.map.readings[(std::size_t)expected_index].state ==
          ChannelState::connected_droplet);
  }
}

TEST_CASE("three droplets stay three droplets at every tick") {
  const ScanContext context = fixtures::default_context(42);
  const MovementScript script = three_droplet_script();
  for (int tick = 0; tick < script.tick_count(); ++tick) {
    const ScanOutcome outcome =
        step_scenario(context, script, FaultSpec{}, "silicone_oil", tick);
    CHECK(outcome.map.count(ChannelState::connected_droplet) == 3);
  }
}

TEST_CASE("droplets hold their last waypoint when the path ends") {
  const ScanContext context = fixtures::default_context(2);
  MovementScript script = single_droplet_script();
  const ScanOutcome outcome =
      step_scenario(context, script, FaultSpec{}, "silicone_oil", 50);
  const int last_index = context.array.at(2, 0).linear_index;
  CHECK(outcome.map.readings[(std::size_t)last_index].state ==
        ChannelState::connected_droplet);
}

TEST_CASE("waypoint collisions name the tick") {
  MovementScript script;
  DropletPath a{0, "water", {{0, 0, -1}, {1, 0, -1}}};
  DropletPath b{1, "water", {{2, 0, -1}, {1, 0, -1}}};
  script.droplets = {a, b};
  const HexArray array(8);

  CHECK_NOTHROW(occupancies_at_tick(script, 0, array, "silicone_oil"));
  CHECK_THROWS_AS(occupancies_at_tick(script, 1, array, "silicone_oil"),
                  ScenarioCollisionError);
  try {
    occupancies_at_tick(script, 1, array, "silicone_oil");
  } catch (const ScenarioCollisionError& error) {
    CHECK(error.tick() == 1);
  }
}

TEST_CASE("script validation rejects non-neighbor waypoints") {
  MovementScript script;
  script.droplets.push_back({0, "water", {{0, 0, -1}, {3, 0, -1}}});
  const HexArray array(8);
  CHECK_THROWS_AS(script.validate(array), std::invalid_argument);

  MovementScript outside;
  outside.droplets.push_back({0, "water", {{9, 9, -1}}});
  CHECK_THROWS_AS(outside.validate(array), std::invalid_argument);
}

TEST_CASE("identical seeds and scenarios give identical maps") {
  const ScanContext context = fixtures::default_context(42);
  const MovementScript script = single_droplet_script();
  for (int tick = 0; tick < 3; ++tick) {
    const ScanOutcome a =
        step_scenario(context, script, FaultSpec{}, "silicone_oil", tick);
    const ScanOutcome b =
        step_scenario(context, script, FaultSpec{}, "silicone_oil", tick);
    for (std::size_t i = 0; i < a.map.readings.size(); ++i) {
      CHECK(a.map.readings[i].magnitude == b.map.readings[i].magnitude);
      CHECK(a.map.readings[i].state == b.map.readings[i].state);
    }
  }
}

TEST_CASE("track reconstructs a scripted single-droplet path") {
  const ScanContext context = fixtures::default_context(42);
  const MovementScript script = single_droplet_script();

  std::vector<StatusMap> maps;
  for (int tick = 0; tick < script.tick_count(); ++tick)
    maps.push_back(
        step_scenario(context, script, FaultSpec{}, "silicone_oil", tick).map);

  const TrackReport report = track(maps, context.array);
  REQUIRE(report.trajectories.size() == 1);
  const Trajectory& trajectory = report.trajectories[0];
  REQUIRE(trajectory.points.size() == 6);
  for (int tick = 0; tick < 6; ++tick) {
    CHECK(trajectory.points[(std::size_t)tick].scan_index == tick);
    CHECK(trajectory.points[(std::size_t)tick].address ==
          context.array.at(-3 + tick, 0));
  }
  CHECK(report.ambiguity_notes.empty());
}

TEST_CASE("track reconstructs three non-intersecting paths") {
  const ScanContext context = fixtures::default_context(42);
  const MovementScript script = three_droplet_script();

  std::vector<StatusMap> maps;
  for (int tick = 0; tick < script.tick_count(); ++tick)
    maps.push_back(
        step_scenario(context, script, FaultSpec{}, "silicone_oil", tick).map);

  const TrackReport report = track(maps, context.array);
  REQUIRE(report.trajectories.size() == 3);
  for (const Trajectory& trajectory : report.trajectories) {
    REQUIRE(trajectory.points.size() == 6);
    // Each trajectory must equal one scripted path, waypoint for waypoint.
    bool matched = false;
    for (const DropletPath& path : script.droplets) {
      bool all = true;
      for (int tick = 0; tick < 6; ++tick)
        if (!(trajectory.points[(std::size_t)tick].address ==
              path.waypoints[(std::size_t)tick]))
          all = false;
      matched = matched || all;
    }
    CHECK(matched);
  }
}

TEST_CASE("track of empty input is empty") {
  CHECK(track({}, HexArray(8)).trajectories.empty());
}

TEST_CASE("track logs equidistant association ambiguity") {
  // Two synthetic droplets adjacent to the same next detection.
  const HexArray array(8);

  const auto synthetic_map = [&](std::vector<std::pair<int, int>> droplets,
                                 int scan_index) {
    StatusMap map;
    map.scan_index = scan_index;
    map.readings.resize((std::size_t)array.size());
    for (int i = 0; i < array.size(); ++i) {
      map.readings[(std::size_t)i].linear_index = i;
      map.readings[(std::size_t)i].zone = array.zone_of(array.at(i));
      map.readings[(std::size_t)i].state = ChannelState::connected_idle;
    }
    for (auto [q, r] : droplets)
      map.readings[(std::size_t)array.at(q, r).linear_index].state =
          ChannelState::connected_droplet;
    return map;
  };

  // (0,0) and (2,0) are both one step from (1,0); only one detection remains.
  std::vector<StatusMap> maps;
  maps.push_back(synthetic_map({{0, 0}, {2, 0}}, 0));
  maps.push_back(synthetic_map({{1, 0}}, 1));

  const TrackReport report = track(maps, array);
  CHECK(report.trajectories.size() == 2);
  CHECK(!report.ambiguity_notes.empty());
  // Lowest linear index wins the contested detection.
  const int idx00 = array.at(0, 0).linear_index;
  const int idx20 = array.at(2, 0).linear_index;
  const int winner = idx00 < idx20 ? 0 : 1;
  CHECK(report.trajectories[(std::size_t)winner].points.size() == 2);
}
