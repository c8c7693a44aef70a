from bsva.cli import main

main()
