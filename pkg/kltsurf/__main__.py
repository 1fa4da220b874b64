from kltsurf.main import main

main()
