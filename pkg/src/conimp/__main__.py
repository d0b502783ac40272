from conimp.cli import main

main()
