from coinduct.cli import main

main()
