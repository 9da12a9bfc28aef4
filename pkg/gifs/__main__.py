from gifs.main import main

main()
