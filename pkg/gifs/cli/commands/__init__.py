# GIFS CLI Commands Package
