from ebt.main import main

main()
