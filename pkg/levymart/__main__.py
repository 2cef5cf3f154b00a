from levymart.cli import main

main()
