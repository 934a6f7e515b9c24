// Standalone runner for the randomized invariants; the acceptance suite runs
// the same properties at larger case counts.

#include <cstdio>
#include <filesystem>

#include "properties.hpp"

using namespace morphnet::testing;

int main() {
  std::filesystem::path scratch =
      std::filesystem::temp_directory_path() / "morphnet_property_scratch";
  int failures = 0;
  auto run = [&](const char* name, auto&& fn) {
    try {
      std::size_t cases = fn();
      std::printf("ok   %-32s %zu cases\n", name, cases);
    } catch (const PropertyFailure& e) {
      std::printf("FAIL %-32s %s\n", name, e.what());
      ++failures;
    }
  };

  run("monotone-order", [] { return prop_monotone_order(400, 1); });
  run("locality", [] { return prop_locality(400, 2); });
  run("translation-equivariance", [] { return prop_translation_equivariance(200, 3); });
  run("window-extension", [] { return prop_window_extension(300, 4); });
  run("iou-bounds-symmetry", [] { return prop_iou_bounds_symmetry(500, 5); });
  run("window-neighborhood", [] { return prop_window_neighborhood(300, 6); });
  run("roundtrips", [&] { return prop_roundtrips(60, 7, scratch); });
  run("flip-involution", [] { return prop_flip_involution(400, 8); });

  return failures;
}
