# GIFS Core Configuration Package
