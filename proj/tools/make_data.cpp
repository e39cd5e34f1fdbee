// Regenerates the JSON instances under data/ from the shared fixtures.
// Usage: make_data <dir>

#include <filesystem>
#include <iostream>

#include "posh/posh.hpp"

namespace fs = std::filesystem;
using namespace posh;
namespace fx = posh::fixtures;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_data <dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);
  auto put = [&](const char* name, const Json& j) { io::save_json(dir / name, j); };

  put("frame_2.json", io::frame_to_json(*fx::frame_2()));
  put("frame_3.json", io::frame_to_json(*fx::frame_3()));
  put("frame_d.json", io::frame_to_json(*fx::frame_d()));
  Json n5_leq = Json::array();
  for (auto [lo, hi] : {std::pair{"0", "x"}, {"x", "z"}, {"z", "1"}, {"0", "y"}, {"y", "1"}}) n5_leq.push_back(Json::array({lo, hi}));
  put("n5.json", Json{{"elements", Json::array({"0", "x", "y", "z", "1"})}, {"leq", n5_leq}});

  put("terminal_d.json", io::presheaf_to_json(terminal(fx::frame_d())));
  put("sheaf_ab.json", io::presheaf_to_json(*fx::sheaf_ab()));
  put("broken_ab.json", io::presheaf_to_json(*fx::broken_ab()));
  put("omega_d.json", io::posheaf_to_json(omega(fx::frame_d())));
  put("posheaf_ab.json", io::posheaf_to_json(fx::posheaf_ab()));
  put("sheaf_of_posets_ab.json", io::posheaf_to_json(fx::sheaf_of_posets_ab()));
  put("sheaf_ab_discrete.json", io::posheaf_to_json(fx::sheaf_ab_discrete()));
  put("m3.json", io::posheaf_to_json(fx::m3_posheaf()));

  put("meet_a.json", io::frame_hom_to_json(fx::meet_a()));
  put("open_inclusion_d.json", io::locale_to_json(open_inclusion(fx::frame_d(), 1)));
  put("non_lh_chain.json", io::locale_to_json(fx::non_lh_chain()));
  put("non_spatial.json", io::locale_to_json(fx::non_spatial()));

  // sup ⊣ ↓ between 𝔻F and F for F = POSHEAF_AB
  const auto f = fx::posheaf_ab();
  const auto d = down_power_sheaf(f);
  put("galois_sup_down.json", Json{{"source", io::posheaf_to_json(d.posheaf)},
                                   {"target", io::posheaf_to_json(f, false)},
                                   {"alpha", io::morphism_to_json(sup_morphism(f, d))},
                                   {"beta", io::morphism_to_json(down_embedding(f, d))}});
  return 0;
}
