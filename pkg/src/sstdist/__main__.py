from sstdist.cli import main

main()
