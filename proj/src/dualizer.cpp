namespace gaugepeps {}
