# GIFS Attractor Toolkit Package
