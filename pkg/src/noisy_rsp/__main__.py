from noisy_rsp.cli import main

main()
