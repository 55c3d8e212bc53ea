#include <doctest.h>

#include <algorithm>
#include <set>

#include "endslab/components.hpp"

using namespace endslab;

namespace {

Space make(const std::string& json) { return Space::parse(json); }

std::vector<PointId> class_points(const Window& w, const ComponentClass& c) {
  std::vector<PointId> pts;
  for (int m : c.members) pts.push_back(w.point(m));
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

TEST_CASE("a line minus its middle splits in two") {
  Space line = make(R"({"kind":"integer_line"})");
  Window w = ball(line, "0", 5);
  auto part = k_components(w, {"0", 2}, 1);
  REQUIRE(part.classes.size() == 2);
  CHECK(part.classes[0].id == "-3");
  CHECK(class_points(w, part.classes[0]) == std::vector<PointId>{"-3", "-4", "-5"});
  CHECK(class_points(w, part.classes[1]) == std::vector<PointId>{"3", "4", "5"});
  CHECK(part.classes[0].live);
  CHECK(part.classes[1].live);
}

TEST_CASE("the grid annulus is one live class") {
  Space grid = make(R"({"kind":"integer_grid","dim":2})");
  Window w = ball(grid, "0,0", 6);
  auto part = k_components(w, {"0,0", 2}, 1);
  CHECK(part.live_count() == 1);
  CHECK(part.classes.size() == 1);
}

TEST_CASE("free group outside the closed 1-ball") {
  // removing the closed 1-ball leaves one subtree per word of length 2
  Space f2 = make(R"({"kind":"free_group","rank":2})");
  Window w = ball(f2, "", 6);
  auto part = k_components(w, {"", 1}, 1);
  CHECK(part.classes.size() == 12);
  CHECK(part.live_count() == 12);
}

TEST_CASE("k_components input errors") {
  Space line = make(R"({"kind":"integer_line"})");
  Window w = ball(line, "0", 5);
  CHECK_THROWS_AS(k_components(w, {"0", 5}, 1), InputError);   // empty domain
  CHECK_THROWS_AS(k_components(w, {"1", 2}, 1), InputError);   // off-origin region
  CHECK_THROWS_AS(k_components(w, {"0", 2}, -1), InputError);  // negative K
}

TEST_CASE("chain_between examples") {
  Space line = make(R"({"kind":"integer_line"})");
  Window w = ball(line, "0", 8);
  BoundedRegion forbidden{"0", 2};

  auto chain = chain_between(w, "4", "7", 1, forbidden);
  REQUIRE(chain.has_value());
  CHECK(chain->points == std::vector<PointId>{"4", "5", "6", "7"});

  CHECK_FALSE(chain_between(w, "4", "-4", 1, forbidden).has_value());
  CHECK_THROWS_AS(chain_between(w, "1", "4", 1, forbidden), InputError);

  Space grid = make(R"({"kind":"integer_grid","dim":2})");
  Window g = ball(grid, "0,0", 7);
  auto around = chain_between(g, "3,0", "-3,0", 1, {"0,0", 2});
  REQUIRE(around.has_value());
  CHECK(around->points.size() <= 15);  // at most 14 unit hops around the ball
  CHECK(around->points.front() == "3,0");
  CHECK(around->points.back() == "-3,0");
  for (std::size_t i = 0; i + 1 < around->points.size(); ++i) {
    CHECK(grid.distance(around->points[i], around->points[i + 1]) <= 1);
    CHECK(grid.distance("0,0", around->points[i]) > 2);
  }
}

TEST_CASE("partition soundness: chains exist exactly within classes") {
  struct Fixture {
    const char* desc;
    Dist radius, forbidden, k;
  };
  for (const auto& fx : {Fixture{R"({"kind":"integer_line"})", 8, 2, 1},
                         Fixture{R"({"kind":"integer_grid","dim":2})", 4, 1, 1},
                         Fixture{R"({"kind":"integer_grid","dim":2})", 4, 1, 2},
                         Fixture{R"({"kind":"comb_tree"})", 8, 3, 1},
                         Fixture{R"({"kind":"free_group","rank":2})", 4, 1, 1}}) {
    Space space = make(fx.desc);
    Window w = ball(space, space.basepoint(), fx.radius);
    REQUIRE(w.size() <= 200);
    BoundedRegion forbidden{space.basepoint(), fx.forbidden};
    auto part = k_components(w, forbidden, fx.k);
    std::vector<int> active;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (part.class_of[i] >= 0) active.push_back(static_cast<int>(i));
    }
    for (int a : active) {
      for (int b : active) {
        if (a >= b) continue;
        auto chain = chain_between(w, w.point(a), w.point(b), fx.k, forbidden);
        CHECK(chain.has_value() == (part.class_of[static_cast<std::size_t>(a)] ==
                                    part.class_of[static_cast<std::size_t>(b)]));
      }
    }
  }
}

TEST_CASE("partitions refine monotonically in K") {
  Space grid = make(R"({"kind":"integer_grid","dim":2})");
  Window w = ball(grid, "0,0", 5);
  Space comb = make(R"({"kind":"comb_tree"})");
  Window cw = ball(comb, "", 8);
  for (const Window* wp : {&w, &cw}) {
    for (Dist k = 1; k <= 3; ++k) {
      auto fine = k_components(*wp, {wp->origin(), 2}, k);
      auto coarse = k_components(*wp, {wp->origin(), 2}, k + 1);
      for (const auto& cls : fine.classes) {
        std::set<int> images;
        for (int m : cls.members) images.insert(coarse.class_of[static_cast<std::size_t>(m)]);
        CHECK(images.size() == 1);
      }
    }
  }
}

TEST_CASE("end profiles are stable on the line and the grid") {
  auto line = end_profile(make(R"({"kind":"integer_line"})"), "0", 1, 16, 4);
  for (auto c : line.counts) CHECK(c == 2);
  CHECK(line.classification() == "finite(2)");

  auto grid = end_profile(make(R"({"kind":"integer_grid","dim":2})"), "0,0", 1, 10, 4);
  for (auto c : grid.counts) CHECK(c == 1);
  CHECK(grid.classification() == "finite(1)");
}

TEST_CASE("end profile growth classes") {
  auto comb = end_profile(make(R"({"kind":"comb_tree"})"), "", 1, 32, 4);
  for (std::size_t i = 0; i < comb.counts.size(); ++i) {
    CHECK(comb.counts[i] == static_cast<std::int64_t>(i) + 3);  // r+2 at radius r=i+1
  }
  CHECK(comb.classification() == "countable-growth");

  auto bin = end_profile(make(R"({"kind":"word_tree","alphabet":"ab"})"), "", 1, 8, 3);
  for (std::size_t i = 0; i < bin.counts.size(); ++i) {
    CHECK(bin.counts[i] == (2LL << (i + 1)));  // 2^(r+1)
  }
  CHECK(bin.classification() == "uncountable-growth");

  // closed-ball component law on the free group: 4 * 3^r at radius r
  auto f2 = end_profile(make(R"({"kind":"free_group","rank":2})"), "", 1, 5, 2);
  std::int64_t expect = 12;
  for (auto c : f2.counts) {
    CHECK(c == expect);
    expect *= 3;
  }
  CHECK(f2.classification() == "uncountable-growth");
}

TEST_CASE("end profile input validation") {
  Space line = make(R"({"kind":"integer_line"})");
  CHECK_THROWS_AS(end_profile(line, "0", 1, 0, 4), InputError);
  CHECK_THROWS_AS(end_profile(line, "0", 1, 8, 0), InputError);
  Limits tiny;
  tiny.point_cap = 50;
  CHECK_THROWS_AS(end_profile(make(R"({"kind":"free_group","rank":2})"), "", 1, 6, 2, tiny),
                  ResourceError);
}

TEST_CASE("thread counts on the bundled spaces") {
  CHECK(component_threads(make(R"({"kind":"integer_line"})"), "0", 1, 8, 4).threads.size() == 2);
  CHECK(component_threads(make(R"({"kind":"comb_tree"})"), "", 1, 16, 4).threads.size() == 18);
  CHECK(component_threads(make(R"({"kind":"word_tree","alphabet":"ab"})"), "", 1, 5, 3)
            .threads.size() == 64);
  CHECK(component_threads(make(R"({"kind":"free_group","rank":2})"), "", 1, 5, 2)
            .threads.size() == 972);
}

TEST_CASE("threads are the live classes at r_max and refinement commutes") {
  auto ts = component_threads(make(R"({"kind":"comb_tree"})"), "", 1, 10, 4);
  CHECK(ts.threads.size() == static_cast<std::size_t>(ts.partitions.back().live_count()));

  // direct containment at r equals the two-step containment through r+1
  for (std::size_t r = 2; r < ts.partitions.size(); ++r) {
    const auto& fine = ts.partitions[r];
    const auto& coarse = ts.partitions[r - 2];
    for (std::size_t c = 0; c < fine.classes.size(); ++c) {
      int direct = coarse.class_of[static_cast<std::size_t>(fine.classes[c].members.front())];
      int via = ts.parent[r - 1][static_cast<std::size_t>(ts.parent[r][c])];
      CHECK(direct == via);
    }
  }

  // live classes map to live classes
  for (std::size_t r = 1; r < ts.partitions.size(); ++r) {
    for (std::size_t c = 0; c < ts.partitions[r].classes.size(); ++c) {
      if (ts.partitions[r].classes[c].live) {
        CHECK(ts.partitions[r - 1].classes[static_cast<std::size_t>(ts.parent[r][c])].live);
      }
    }
  }
}

TEST_CASE("thread count equals the subtree count on finitely branching trees") {
  // one thread per depth-(r_max+1) node whose subtree reaches the horizon;
  // on these trees every subtree does, so the count is |sphere(r_max+1)|
  for (const char* desc :
       {R"({"kind":"comb_tree"})", R"({"kind":"word_tree","alphabet":"ab"})",
        R"({"kind":"finitely_branching_tree","child_rule":{"prefix":[3],"period":[2,1]}})"}) {
    Space space = make(desc);
    int r_max = 6;
    auto ts = component_threads(space, space.basepoint(), 1, r_max, 3);
    CHECK(ts.threads.size() == sphere(space, space.basepoint(), r_max + 1).size());
  }
}

TEST_CASE("dead-end spurs are not counted as live") {
  // a long path with a short spur rooted inside the forbidden ball: the
  // spur's class never reaches the horizon
  std::map<PointId, std::vector<PointId>> adj;
  auto link = [&](const PointId& a, const PointId& b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int i = 0; i + 1 <= 20; ++i) link("p" + std::to_string(i), "p" + std::to_string(i + 1));
  link("p8", "q1");  // spur points sit at depths 9..11
  link("q1", "q2");
  link("q2", "q3");
  SpaceDescriptor d;
  d.kind = SpaceKind::custom;
  d.adjacency_rule = adj;
  d.basepoint = "p0";
  Space space(std::move(d));

  Window w = ball(space, "p0", 14);
  auto part = k_components(w, {"p0", 8}, 1);
  REQUIRE(part.classes.size() == 2);  // the path tail and the spur
  CHECK(part.live_count() == 1);
  for (const auto& cls : part.classes) {
    auto pts = class_points(w, cls);
    bool is_spur = std::find(pts.begin(), pts.end(), "q1") != pts.end();
    CHECK(cls.live == !is_spur);
  }
}

TEST_CASE("lazy component search matches the windowed partition") {
  Space comb = make(R"({"kind":"comb_tree"})");
  BaseDistance base(comb, "");
  Window w = ball(comb, "", 12);
  auto part = k_components(w, {"", 5}, 1);

  // spine and first spur beyond radius 5 are distinct components
  CHECK(same_thread(comb, "", "aaaaaaa", "aaaaaaab", 1, 5, 7));
  CHECK_FALSE(same_thread(comb, "", "aaaaaaa", "bbbbbbb", 1, 5, 7));

  auto search = lazy_component_search(comb, base, "bbbbbbb", nullptr, 1, 5, 12, {});
  CHECK(search.exhausted);
  CHECK(search.touched_horizon);
  int cls = part.class_of[static_cast<std::size_t>(w.index_of("bbbbbbb"))];
  CHECK(search.visited == part.classes[static_cast<std::size_t>(cls)].members.size());
  CHECK(search.least_point == part.classes[static_cast<std::size_t>(cls)].id);
}

TEST_CASE("lazy search scales past the window cap") {
  // F2 thread membership at r_max = 16 without materialising B(e; 18)
  Space f2 = make(R"({"kind":"free_group","rank":2})");
  std::string a17(17, 'a'), a18(18, 'a');
  std::string b17(17, 'b');
  CHECK(same_thread(f2, "", a17, a18, 1, 16, 2));
  CHECK_FALSE(same_thread(f2, "", a17, b17, 1, 16, 2));
}

TEST_CASE("profile and thread serialisation are deterministic") {
  Space comb = make(R"({"kind":"comb_tree"})");
  auto p1 = profile_to_json(comb, "", end_profile(comb, "", 1, 8, 4));
  auto p2 = profile_to_json(comb, "", end_profile(comb, "", 1, 8, 4));
  CHECK(p1.dump() == p2.dump());

  auto ts = component_threads(comb, "", 1, 4, 3);
  CHECK(threads_to_json(comb, "", ts, false).dump() ==
        threads_to_json(comb, "", component_threads(comb, "", 1, 4, 3), false).dump());
  auto dot = threads_to_dot(ts);
  CHECK(dot.find("digraph") == 0);
  CHECK(profile_to_csv(end_profile(comb, "", 1, 4, 3)).find("r,count,classification") == 0);
}
