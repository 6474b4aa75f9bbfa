#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "leachsim/protocol.h"
#include "leachsim/radio.h"

using namespace leachsim;

namespace {

/// Hand-built network: explicit positions, full batteries.
SimState make_state(const std::vector<Position>& positions, double energy = 0.5,
                    Position sink = {200, 200}) {
  SimState state;
  state.sink = sink;
  state.seed = 1;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    NodeState n;
    n.id = static_cast<NodeId>(i);
    n.pos = positions[i];
    n.energy = energy;
    n.energy_at_election = energy;
    state.nodes.push_back(n);
  }
  return state;
}

ClusterAssignment one_cluster(const SimState& state, NodeId ch) {
  return form_clusters(state, {ch});
}

}  // namespace

TEST_SUITE("protocol") {
  TEST_CASE("election_threshold follows the rotation formula") {
    ProtocolParams params;
    params.p = 0.1;
    NodeState fresh;
    CHECK(election_threshold(params, 0, fresh) == doctest::Approx(0.1));
    CHECK(election_threshold(params, 9, fresh) == doctest::Approx(1.0));
    CHECK(election_threshold(params, 5, fresh) == doctest::Approx(0.1 / 0.5));
    CHECK(election_threshold(params, 10, fresh) == doctest::Approx(0.1));

    NodeState served;
    served.last_ch_round = 4;
    CHECK(election_threshold(params, 5, served) == 0.0);
    CHECK(election_threshold(params, 9, served) == 0.0);
    // The next epoch starts at round 10 and the node is eligible again.
    CHECK(election_threshold(params, 10, served) == doctest::Approx(0.1));

    params.p = 1.0;
    CHECK(election_threshold(params, 0, fresh) == 1.0);
    CHECK(election_threshold(params, 17, fresh) == 1.0);
  }

  TEST_CASE("p = 1 makes every alive node a cluster head") {
    NetworkConfig config;
    config.protocol.p = 1.0;
    SimState state = build_network(config);
    state.nodes[3].alive = false;
    state.nodes[3].energy = 0;
    const auto chs = elect_cluster_heads(state, config.protocol);
    CHECK(chs.size() == 99);
    CHECK(std::find(chs.begin(), chs.end(), 3) == chs.end());
  }

  TEST_CASE("mean CH count at p = 0.1, round 0 is about 10 (Monte Carlo over 1000 seeds)") {
    NetworkConfig config;
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      config.seed = seed;
      SimState state = build_network(config);
      total += static_cast<double>(elect_cluster_heads(state, config.protocol).size());
    }
    const double mean = total / 1000.0;
    CHECK(mean >= 9.0);
    CHECK(mean <= 11.0);
  }

  TEST_CASE("every eligible node is elected by the last round of the epoch, then eligibility resets") {
    NetworkConfig config;
    config.protocol.variant = Variant::leach;
    SimState state = build_network(config);
    std::set<NodeId> served;
    for (Round r = 0; r < 10; ++r) {
      state.round = r;
      for (NodeId id : elect_cluster_heads(state, config.protocol)) CHECK(served.insert(id).second);
    }
    CHECK(served.size() == 100);
    state.round = 10;
    const auto next = elect_cluster_heads(state, config.protocol);
    CHECK_FALSE(next.empty());
  }

  TEST_CASE("retain_cluster_heads") {
    SimState state = make_state({{0, 0}, {10, 0}, {20, 0}});
    ProtocolParams params;
    params.variant = Variant::modleach;
    params.retention_fraction = 0.7;

    state.nodes[0].is_ch = true;
    state.nodes[0].energy_at_election = 0.4;
    state.nodes[0].energy = 0.35;  // 0.35 >= 0.28
    state.nodes[1].is_ch = true;
    state.nodes[1].energy_at_election = 0.4;
    state.nodes[1].energy = 0.25;  // below 0.28
    state.nodes[2].is_ch = true;
    state.nodes[2].alive = false;
    state.nodes[2].energy = 0;

    CHECK(retain_cluster_heads(state, params) == std::vector<NodeId>{0});
    params.variant = Variant::imodleach;
    CHECK(retain_cluster_heads(state, params) == std::vector<NodeId>{0});
    params.variant = Variant::leach;
    CHECK(retain_cluster_heads(state, params).empty());
  }

  TEST_CASE("retained heads join without a draw and keep their election energy") {
    SimState state = make_state({{0, 0}, {10, 0}});
    ProtocolParams params;
    state.round = 3;
    state.nodes[0].energy_at_election = 0.45;
    state.nodes[0].energy = 0.40;
    const auto chs = elect_cluster_heads(state, params, {0});
    CHECK(std::find(chs.begin(), chs.end(), 0) != chs.end());
    CHECK(state.nodes[0].is_ch);
    CHECK(state.nodes[0].last_ch_round == 3);
    CHECK(state.nodes[0].energy_at_election == 0.45);
  }

  TEST_CASE("form_clusters: nearest head, lowest id on ties, direct fallback") {
    // Node 0 sits exactly between heads 3 and 7.
    std::vector<Position> pos(8, Position{390, 390});
    pos[0] = {100, 100};
    pos[3] = {90, 100};
    pos[7] = {110, 100};
    pos[1] = {10, 10};
    SimState state = make_state(pos);
    const auto a = form_clusters(state, {7, 3});
    CHECK(a.ch_ids == std::vector<NodeId>{3, 7});
    CHECK(a.links[0].kind == Link::Kind::member);
    CHECK(a.links[0].cluster_head == 3);
    CHECK(a.links[1].cluster_head == 3);
    CHECK(a.links[3].kind == Link::Kind::cluster_head);

    SimState single = make_state({{0, 0}, {1, 1}, {300, 300}, {5, 390}});
    const auto b = one_cluster(single, 2);
    for (NodeId id : {0, 1, 3}) {
      CHECK(b.links[static_cast<std::size_t>(id)].kind == Link::Kind::member);
      CHECK(b.links[static_cast<std::size_t>(id)].cluster_head == 2);
    }
    CHECK(b.clustered_members() == 3);

    SimState five = make_state({{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}});
    const auto c = form_clusters(five, {});
    CHECK(c.ch_ids.empty());
    for (const auto& link : c.links) CHECK(link.kind == Link::Kind::direct_to_bs);
    CHECK(c.clustered_members() == 0);
  }

  TEST_CASE("sense is deterministic and uniform") {
    NetworkConfig config;
    NodeState node;
    node.id = 5;
    CHECK(sense(node, config, 1, 17) == sense(node, config, 1, 17));
    CHECK(sense(node, config, 1, 17) != sense(node, config, 1, 18));

    double sum = 0.0;
    for (int i = 0; i < 100'000; ++i) {
      node.id = i % 100;
      const double v = sense(node, config, 3, i / 100);
      CHECK_UNARY(v >= 0.0);
      CHECK_UNARY(v < 1000.0);
      sum += v;
    }
    const double mean = sum / 100'000;
    CHECK(mean >= 495.0);
    CHECK(mean <= 505.0);

    config.sensed_min = 42;
    config.sensed_max = 42;  // degenerate interval, only reachable by direct call
    CHECK(sense(node, config, 9, 9) == 42.0);
  }

  TEST_CASE("should_report applies the hard and soft thresholds") {
    ProtocolParams params;  // h = 100, s = 2
    NodeState node;
    CHECK_FALSE(should_report(99, node, params));
    CHECK_FALSE(node.last_reported_value.has_value());
    CHECK(should_report(150, node, params));
    CHECK(node.last_reported_value == 150.0);
    CHECK_FALSE(should_report(151, node, params));
    CHECK(node.last_reported_value == 150.0);
    CHECK(should_report(152, node, params));
    CHECK(should_report(100, node, params));

    params.variant = Variant::leach;
    CHECK(should_report(0, node, params));
    CHECK(should_report(0, node, params));
  }

  TEST_CASE("steady_state_frame accounting") {
    NetworkConfig config;
    config.protocol.h = 0;
    config.protocol.s = 0;

    SUBCASE("one head, three members, thresholds off") {
      SimState state = make_state({{100, 100}, {110, 100}, {100, 110}, {90, 90}});
      const auto a = one_cluster(state, 0);
      const double before = state.total_energy();
      const auto out = steady_state_frame(state, a, config);
      CHECK(out.packets_to_ch == 3);
      CHECK(out.packets_to_bs == 1);

      // Independent tally of the expected debits.
      const RadioParams& r = config.radio;
      double want = 0.0;
      for (int i = 1; i <= 3; ++i) {
        want += tx_energy(r, 4000, distance(state.nodes[i].pos, state.nodes[0].pos),
                          PowerLevel::intra_cluster)
                    .joules;
        want += rx_energy(r, 4000).joules;
      }
      want += agg_energy(r, 4000, 4).joules;
      want += tx_energy(r, 4000, distance(state.nodes[0].pos, state.sink), PowerLevel::to_base_station)
                  .joules;
      CHECK(out.energy_spent == doctest::Approx(want).epsilon(1e-12));
      CHECK(before - state.total_energy() == doctest::Approx(want).epsilon(1e-9));
    }

    SUBCASE("head with no reports stays silent") {
      config.protocol.h = 2000;  // above the sensed range
      SimState state = make_state({{100, 100}, {110, 100}, {100, 110}});
      const auto out = steady_state_frame(state, one_cluster(state, 0), config);
      CHECK(out.packets_to_ch == 0);
      CHECK(out.packets_to_bs == 0);
      CHECK(out.energy_spent == 0.0);
    }

    SUBCASE("direct fallback reports to the base station") {
      SimState state = make_state({{100, 100}});
      const auto out = steady_state_frame(state, form_clusters(state, {}), config);
      CHECK(out.packets_to_bs == 1);
      CHECK(out.packets_to_ch == 0);
    }

    SUBCASE("exhausted nodes clamp at zero and die at frame end") {
      SimState state = make_state({{0, 0}, {400, 400}}, 1e-6, {0, 0});
      const auto out = steady_state_frame(state, one_cluster(state, 0), config);
      CHECK(out.packets_to_ch == 1);
      CHECK(out.packets_to_bs == 1);
      for (const auto& n : state.nodes) {
        CHECK(n.energy == 0.0);
        CHECK_FALSE(n.alive);
        CHECK_FALSE(n.is_ch);
      }
      CHECK(out.energy_spent == doctest::Approx(2e-6).epsilon(1e-12));
    }
  }

  TEST_CASE("simulate_round") {
    NetworkConfig config;
    SUBCASE("all nodes dead signals completion") {
      SimState state = build_network(config);
      for (auto& n : state.nodes) {
        n.alive = false;
        n.energy = 0;
      }
      CHECK_FALSE(simulate_round(state, config).has_value());
    }
    SUBCASE("zero-CH round") {
      config.node_count = 1;
      config.protocol.p = 0.01;
      // Find a seed whose single node is not elected in round 0.
      for (std::uint64_t seed = 1;; ++seed) {
        config.seed = seed;
        SimState state = build_network(config);
        const auto rec = simulate_round(state, config);
        REQUIRE(rec.has_value());
        if (rec->ch_count == 0) {
          CHECK(rec->packets_to_ch == 0);
          CHECK(rec->clustered_members == 0);
          CHECK(rec->r == 1);
          break;
        }
      }
    }
    SUBCASE("energy falls whenever a packet moves") {
      SimState state = build_network(config);
      for (int i = 0; i < 50; ++i) {
        const double before = state.total_energy();
        const auto rec = simulate_round(state, config);
        REQUIRE(rec.has_value());
        if (rec->packets_to_bs + rec->packets_to_ch > 0) CHECK(rec->energy_remaining < before);
      }
    }
  }

  TEST_CASE("run_simulation is deterministic") {
    NetworkConfig config;
    config.seed = 11;
    const auto a = run_simulation(config);
    const auto b = run_simulation(config);
    CHECK(a.records == b.records);
    CHECK(a.summary == b.summary);
    CHECK_FALSE(a.summary.censored());
  }

  TEST_CASE("property: conservation, monotone alive, heads alive, energy never rises") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
      NetworkConfig config;
      config.seed = gen();
      config.node_count = 5 + static_cast<int>(unit(gen) * 80);
      config.protocol.p = 0.05 + 0.95 * unit(gen);
      config.protocol.h = std::floor(unit(gen) * 600);
      config.protocol.s = std::floor(unit(gen) * 8);
      config.protocol.retention_fraction = unit(gen) < 0.5 ? 0.7 : 1.0;
      config.sink.tag = static_cast<SinkTag>(gen() % 4);
      config.initial_energy = 0.05 + unit(gen) * 0.2;

      SimState state = build_network(config);
      const double initial = state.total_energy();
      double spent = 0.0;
      int alive = config.node_count;
      std::vector<double> last(state.nodes.size(), config.initial_energy);
      while (state.round < config.max_rounds) {
        const auto rec = simulate_round(state, config);
        if (!rec) break;
        spent += rec->energy_spent;
        CHECK(std::abs(initial - rec->energy_remaining - spent) / initial <= 1e-9);
        CHECK(rec->alive <= alive);
        alive = rec->alive;
        for (const auto& n : state.nodes) {
          if (n.is_ch) CHECK(n.alive);
          CHECK(n.alive == (n.energy > 0.0));
          CHECK(n.energy <= last[static_cast<std::size_t>(n.id)]);
          last[static_cast<std::size_t>(n.id)] = n.energy;
        }
      }
      CHECK(alive == 0);
    }
  }

  TEST_CASE("property: no node is elected twice within one epoch") {
    for (double p : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
      for (auto variant : {Variant::leach, Variant::imodleach}) {
        NetworkConfig config;
        config.protocol.p = p;
        config.protocol.variant = variant;
        config.protocol.retention_fraction = 0.7;
        config.seed = 77;
        SimState state = build_network(config);
        const Round epoch = config.protocol.epoch_length();
        std::map<NodeId, Round> elected_in_epoch;
        for (int i = 0; i < 300 && state.alive_count() > 0; ++i) {
          const Round r = state.round;
          const auto retained = retain_cluster_heads(state, config.protocol);
          const auto chs = elect_cluster_heads(state, config.protocol, retained);
          for (NodeId id : chs) {
            if (std::find(retained.begin(), retained.end(), id) != retained.end()) continue;
            auto it = elected_in_epoch.find(id);
            if (it != elected_in_epoch.end()) CHECK(it->second / epoch != r / epoch);
            elected_in_epoch[id] = r;
          }
          steady_state_frame(state, form_clusters(state, chs), config);
          state.round += 1;
        }
      }
    }
  }

  TEST_CASE("property: zero thresholds reduce reactive reporting to proactive") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      NetworkConfig config;
      config.seed = seed;
      config.protocol.h = 0;
      config.protocol.s = 0;
      const auto run = run_simulation(config);
      for (const auto& rec : run.records) CHECK(rec.packets_to_ch == rec.clustered_members);
    }
  }

  TEST_CASE("property: disabled retention and zero thresholds match leach elections") {
    for (double p : {0.1, 0.3, 0.8}) {
      NetworkConfig a;
      a.protocol.p = p;
      a.protocol.h = 0;
      a.protocol.s = 0;
      a.protocol.retention_fraction = 1.5;
      NetworkConfig b = a;
      b.protocol.variant = Variant::leach;
      const auto ra = run_simulation(a);
      const auto rb = run_simulation(b);
      REQUIRE(ra.records.size() == rb.records.size());
      for (std::size_t i = 0; i < ra.records.size(); ++i) {
        CHECK(ra.records[i].ch_count == rb.records[i].ch_count);
      }
    }
  }

  TEST_CASE("k1 stays within (0, p] for completed runs") {
    for (double p : {0.1, 0.4, 0.9}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        NetworkConfig config;
        config.protocol.p = p;
        config.seed = seed;
        const auto s = run_simulation(config).summary;
        REQUIRE_FALSE(s.censored());
        REQUIRE(s.k1.has_value());
        CHECK(*s.k1 > 0.0);
        CHECK(*s.k1 <= p);
      }
    }
  }

  TEST_CASE("higher p: earlier first death, later last death (10-seed means)") {
    auto means = [](double p) {
      double first = 0, last = 0;
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        NetworkConfig config;
        config.protocol.p = p;
        config.seed = seed;
        const auto s = run_simulation(config).summary;
        first += static_cast<double>(s.first_dead_round.value());
        last += static_cast<double>(s.last_dead_round.value());
      }
      return std::pair{first / 10, last / 10};
    };
    const auto low = means(0.1);
    const auto high = means(0.9);
    CHECK(high.first < low.first);
    CHECK(high.second > low.second);
  }
}
