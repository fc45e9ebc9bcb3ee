#include "gaugepeps/lattice.hpp"
int main(){ gaugepeps::LatticeGeometry g(2,2,gaugepeps::Boundary::torus); return g.n_links()==8?0:1; }
