# GIFS Command Line Package
