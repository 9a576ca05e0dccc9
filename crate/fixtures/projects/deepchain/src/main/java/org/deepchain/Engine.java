package org.deepchain;

public class Engine {
    private String config = "default";
    private boolean running;
    private int depth2;
    private int depth3;
    private int depth4;
    private int depth5;
    private String label;

    public void start() {
        running = true;
        level2();
    }

    void level2() {
        depth2 = 2;
        level3();
    }

    void level3() {
        depth3 = 3;
        level4();
    }

    void level4() {
        depth4 = 4;
        level5();
    }

    void level5() {
        depth5 = 5;
    }

    public boolean isRunning() {
        return running;
    }

    public int depth() {
        return depth2 + depth3 + depth4 + depth5;
    }

    public String getConfig() {
        return config;
    }
}
