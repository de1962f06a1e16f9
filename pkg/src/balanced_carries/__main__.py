from balanced_carries.cli import main

if __name__ == "__main__":
    main()
