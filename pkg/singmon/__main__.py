from singmon.cli import main

main()
