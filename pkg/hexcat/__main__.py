from hexcat.cli import main

main()
